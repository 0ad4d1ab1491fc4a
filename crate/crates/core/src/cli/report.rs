// Copyright 2026 The sectorkit Developers
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.

//! Report assembly, declared expectations and the plain-text summary.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use super::config::{Config, AXIOM_NAMES, NET_CHECKS};
use super::{ExitKind, RunError, Suite};
use crate::paulinet::{NetModel, NetReport, PauliElement};
use crate::poset::{AxiomReport, H1Invariants, IndexPoset};
use crate::scalar::Gauss;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// One declared verdict compared with the observed one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expectation {
    pub check: String,
    pub expected: String,
    pub observed: String,
    pub matches: bool,
}

#[derive(Clone, Debug)]
pub struct Report {
    suite: Suite,
    config: Config,
    pub poset: Option<Value>,
    pub net: Option<Value>,
    pub cocycles: Option<Vec<Value>>,
    pub expectations: Vec<Expectation>,
}

fn verdict_of(v: &Value) -> String {
    match v.get("verdict") {
        Some(Value::String(s)) => s.clone(),
        // duality entries nest the verdict object one level down
        Some(inner @ Value::Object(_)) => verdict_of(inner),
        _ => "missing".into(),
    }
}

fn verdict_matches(expected: &str, observed: &str) -> bool {
    expected == observed || (expected == "passes" && (observed == "holds" || observed == "holds-relative-to-sample"))
}

/// Combined verdict of a list of checks: any failure fails, otherwise any unknown is unknown.
fn combined(checks: &[Value]) -> String {
    let names: Vec<String> = checks.iter().map(verdict_of).collect();
    if names.iter().any(|n| n == "fails") {
        "fails".into()
    } else if names.iter().any(|n| n != "holds") {
        "unknown".into()
    } else {
        "holds".into()
    }
}

fn checks_verdict(section: Option<&Value>) -> String {
    match section {
        None => "missing".into(),
        Some(v) if v.get("error").is_some() => format!("error: {}", v["error"].as_str().unwrap_or_default()),
        Some(v) => combined(v["checks"].as_array().map(Vec::as_slice).unwrap_or_default()),
    }
}

/// `+1`, `-1`, or the raw value when `ε` is not a sign.
fn epsilon_sign(values: &[Value]) -> String {
    if values.len() != 1 {
        return format!("{} distinct values", values.len());
    }
    let raw = values[0].as_str().unwrap_or_default();
    match PauliElement::from_str(raw).ok().and_then(|e| e.as_scalar()) {
        Some(c) if c == Gauss::one() => "+1".into(),
        Some(c) if c == -Gauss::one() => "-1".into(),
        _ => raw.to_string(),
    }
}

fn has_unknown(v: &Value) -> bool {
    match v {
        Value::Object(m) => m.iter().any(|(k, x)| (k == "verdict" && x == "unknown") || has_unknown(x)),
        Value::Array(a) => a.iter().any(has_unknown),
        _ => false,
    }
}

impl Report {
    pub(super) fn new(suite: Suite, config: &Config) -> Result<Self, RunError> {
        Ok(Self { suite, config: config.clone(), poset: None, net: None, cocycles: None, expectations: Vec::new() })
    }

    pub(super) fn record_poset(&mut self, p: &IndexPoset, axioms: &AxiomReport, h1: Option<&H1Invariants>, h1_error: Option<String>) -> Result<(), RunError> {
        let mut ax = serde_json::Map::new();
        for (name, v) in axioms.verdicts() {
            ax.insert(name.into(), serde_json::to_value(v).map_err(super::internal)?);
        }
        let h1 = match (h1, h1_error) {
            (Some(h), _) => json!(h),
            (None, e) => json!({ "error": e.unwrap_or_default() }),
        };
        self.poset = Some(json!({ "elements": p.len(), "group_order": p.group_len(), "axioms": ax, "h1": h1 }));
        Ok(())
    }

    pub(super) fn record_net(&mut self, model: NetModel, sites: usize, checks: &NetReport) -> Result<(), RunError> {
        self.net = Some(json!({ "model": model, "sites": sites, "checks": checks }));
        Ok(())
    }

    fn expect(&mut self, check: String, expected: String, observed: String) {
        let matches = verdict_matches(&expected, &observed);
        self.expectations.push(Expectation { check, expected, observed, matches });
    }

    /// Compares the declared expectations with everything that ran.
    pub(super) fn finish(&mut self) {
        let expect = self.config.expect.clone();
        if let Some(poset) = self.poset.clone().filter(|p| p.get("axioms").is_some()) {
            for name in AXIOM_NAMES {
                if let Some(e) = expect.axioms.get(name) {
                    self.expect(format!("poset.{name}"), e.clone(), verdict_of(&poset["axioms"][name]));
                }
            }
            if let Some(h) = &expect.h1 {
                let observed = match poset["h1"].get("rank") {
                    Some(r) => format!("rank {r}, torsion {}", poset["h1"]["torsion"]),
                    None => format!("error: {}", poset["h1"]["error"].as_str().unwrap_or_default()),
                };
                let expected = format!("rank {}, torsion {}", h.rank, json!(h.torsion));
                self.expect("poset.h1".into(), expected, observed);
            }
        }
        if let Some(net) = self.net.clone() {
            for name in NET_CHECKS {
                if let Some(e) = expect.net.get(name) {
                    let observed = if name == "duality" {
                        combined(net["checks"]["duality"].as_array().map(Vec::as_slice).unwrap_or_default())
                    } else {
                        verdict_of(&net["checks"][name])
                    };
                    self.expect(format!("net.{name}"), e.clone(), observed);
                }
            }
        }
        for entry in self.cocycles.clone().unwrap_or_default() {
            let name = entry["name"].as_str().unwrap_or_default().to_string();
            let Some(e) = expect.cocycles.get(&name) else { continue };
            let key = |k: &str| format!("cocycles.{name}.{k}");
            if entry.get("verify").is_some() {
                if let Some(v) = &e.verify {
                    self.expect(key("verify"), v.clone(), checks_verdict(entry.get("verify")));
                }
                if let Some(v) = &e.morphism_laws {
                    self.expect(key("morphism_laws"), v.clone(), checks_verdict(entry.get("morphism_laws")));
                }
            }
            if let Some(stats) = entry.get("statistics") {
                if let Some(v) = &e.conjugate {
                    let c = &entry["conjugate"];
                    let observed = if c.get("error").is_some() {
                        checks_verdict(Some(c))
                    } else {
                        let own = checks_verdict(Some(c));
                        let bar = checks_verdict(c.get("verify"));
                        if own == "holds" { bar } else { own }
                    };
                    self.expect(key("conjugate"), v.clone(), observed);
                }
                let failed = stats.get("error").map(|m| format!("error: {}", m.as_str().unwrap_or_default()));
                let field = |f: &str| failed.clone().unwrap_or_else(|| stats[f].to_string());
                if let Some(v) = &e.epsilon {
                    let observed = failed.clone().unwrap_or_else(|| epsilon_sign(stats["path_dependence"]["values"].as_array().map(Vec::as_slice).unwrap_or_default()));
                    self.expect(key("epsilon"), v.clone(), observed);
                }
                if let Some(v) = e.simple {
                    self.expect(key("simple"), v.to_string(), field("simple"));
                }
                if let Some(v) = e.chi {
                    self.expect(key("chi"), v.to_string(), field("chi"));
                }
                if let Some(v) = e.dimension {
                    self.expect(key("dimension"), v.to_string(), field("dimension"));
                }
                if let Some(v) = e.irreducible {
                    self.expect(key("irreducible"), v.to_string(), field("irreducible"));
                }
                if let Some(v) = e.path_dependence_annotated {
                    let observed = failed.clone().unwrap_or_else(|| stats["path_dependence"].get("annotation").is_some().to_string());
                    self.expect(key("path_dependence_annotated"), v.to_string(), observed);
                }
            }
            if let Some(trips) = entry.get("round_trip") {
                if let Some(v) = &e.round_trip {
                    let list = trips.as_array().cloned().unwrap_or_default();
                    let observed = match list.iter().find(|t| t.get("error").is_some()) {
                        Some(t) => checks_verdict(Some(t)),
                        None => combined(&list.iter().map(|t| t["check"].clone()).collect::<Vec<_>>()),
                    };
                    self.expect(key("round_trip"), v.clone(), observed);
                }
                if let Some(v) = &e.pole_change {
                    let pc = &entry["pole_change"];
                    let observed = if pc.get("error").is_some() { checks_verdict(Some(pc)) } else { verdict_of(&pc["check"]) };
                    self.expect(key("pole_change"), v.clone(), observed);
                }
            }
        }
        if self.config.require_conclusive {
            let sections = [self.poset.clone(), self.net.clone(), self.cocycles.clone().map(Value::from)];
            if sections.iter().flatten().any(has_unknown) {
                self.expect("conclusive".into(), "no unknown verdicts".into(), "some verdicts are unknown".into());
            }
        }
    }

    pub fn mismatches(&self) -> usize {
        self.expectations.iter().filter(|e| !e.matches).count()
    }

    pub fn exit_kind(&self) -> ExitKind {
        if self.mismatches() == 0 {
            ExitKind::Ok
        } else {
            ExitKind::Mismatch
        }
    }

    pub fn to_value(&self) -> Value {
        let mut m = serde_json::Map::new();
        m.insert("schema".into(), json!("sectorkit-report"));
        m.insert("schema_version".into(), json!(REPORT_SCHEMA_VERSION));
        m.insert("tool_version".into(), json!(env!("CARGO_PKG_VERSION")));
        m.insert("scenario".into(), json!(self.config.name));
        m.insert("suite".into(), json!(self.suite.name()));
        m.insert("config".into(), json!(self.config));
        if let Some(p) = &self.poset {
            m.insert("poset".into(), p.clone());
        }
        if let Some(n) = &self.net {
            m.insert("net".into(), n.clone());
        }
        if let Some(c) = &self.cocycles {
            m.insert("cocycles".into(), Value::from(c.clone()));
        }
        m.insert("expectations".into(), json!(self.expectations));
        m.insert("outcome".into(), json!(if self.mismatches() == 0 { "ok" } else { "expectation-mismatch" }));
        Value::Object(m)
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "sectorkit {} | scenario {} | suite {}", env!("CARGO_PKG_VERSION"), self.config.name, self.suite.name());
        if let Some(p) = &self.poset {
            let _ = writeln!(s, "poset: {} elements, symmetry group of order {}", p["elements"], p["group_order"]);
            if let Some(ax) = p.get("axioms") {
                let line: Vec<String> = AXIOM_NAMES.iter().map(|k| format!("{k} {}", verdict_of(&ax[*k]))).collect();
                let _ = writeln!(s, "  axioms: {}", line.join(", "));
                match p["h1"].get("rank") {
                    Some(r) => {
                        let _ = writeln!(s, "  H1: rank {r}, torsion {}", p["h1"]["torsion"]);
                    }
                    None => {
                        let _ = writeln!(s, "  H1: {}", p["h1"]["error"].as_str().unwrap_or_default());
                    }
                }
            }
        }
        if let Some(n) = &self.net {
            let _ = writeln!(s, "net: model {} on {} sites", n["model"].as_str().unwrap_or_default(), n["sites"]);
            let line: Vec<String> = NET_CHECKS
                .iter()
                .map(|k| {
                    let v = if *k == "duality" {
                        combined(n["checks"]["duality"].as_array().map(Vec::as_slice).unwrap_or_default())
                    } else {
                        verdict_of(&n["checks"][*k])
                    };
                    format!("{k} {v}")
                })
                .collect();
            let _ = writeln!(s, "  {}", line.join(", "));
        }
        for c in self.cocycles.iter().flatten() {
            let _ = writeln!(s, "cocycle {} (charge {}, character {})", c["name"].as_str().unwrap_or_default(), c["charge"].as_str().unwrap_or_default(), c["character"].as_str().unwrap_or_default());
            for k in ["verify", "morphism_laws", "delta"] {
                if c.get(k).is_some() {
                    let _ = writeln!(s, "  {k}: {}", checks_verdict(c.get(k)));
                }
            }
            if let Some(st) = c.get("statistics") {
                if st.get("error").is_some() {
                    let _ = writeln!(s, "  statistics: {}", checks_verdict(Some(st)));
                } else {
                    let eps = epsilon_sign(st["path_dependence"]["values"].as_array().map(Vec::as_slice).unwrap_or_default());
                    let _ = writeln!(
                        s,
                        "  statistics: simple {}, chi {}, dimension {}, irreducible {}, epsilon {eps} over {} samples",
                        st["simple"], st["chi"], st["dimension"], st["irreducible"], st["path_dependence"]["samples"]
                    );
                    if let Some(a) = st["path_dependence"].get("annotation").and_then(Value::as_str) {
                        let _ = writeln!(s, "    note: {a}");
                    }
                }
                let _ = writeln!(s, "  conjugate: {}", checks_verdict(c.get("conjugate")));
            }
            if let Some(trips) = c.get("round_trip").and_then(Value::as_array) {
                for t in trips {
                    let verdict = if t.get("error").is_some() { checks_verdict(Some(t)) } else { verdict_of(&t["check"]) };
                    let _ = writeln!(s, "  round trip via {}: {verdict}, identical {}", t["poles"][0].as_str().unwrap_or("?"), t["identical"]);
                }
                let pc = &c["pole_change"];
                let verdict = if pc.get("error").is_some() { checks_verdict(Some(pc)) } else { verdict_of(&pc["check"]) };
                let _ = writeln!(s, "  pole change: {verdict}");
            }
        }
        let _ = writeln!(s, "expectations: {} declared, {} mismatched", self.expectations.len(), self.mismatches());
        for e in self.expectations.iter().filter(|e| !e.matches) {
            let _ = writeln!(s, "  MISMATCH {}: expected {}, observed {}", e.check, e.expected, e.observed);
        }
        let _ = writeln!(s, "outcome: {}", if self.mismatches() == 0 { "ok" } else { "expectation mismatch" });
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(extra: &str) -> Config {
        Config::parse(&format!(r#"{{"schema_version":1,"name":"t","seed":1,"family":{{"kind":"circle-arcs","n":12,"radii":["1/12","1/6"]}}{extra}}}"#)).unwrap()
    }

    #[test]
    fn nested_duality_verdicts_are_read() {
        let entry = json!({ "element": "b000", "verdict": { "verdict": "holds" } });
        assert_eq!(verdict_of(&entry), "holds");
        assert_eq!(combined(&[entry.clone(), json!({ "verdict": "unknown" })]), "unknown");
        assert_eq!(combined(&[entry, json!({ "verdict": { "verdict": "fails" } })]), "fails");
    }

    #[test]
    fn passes_accepts_sample_relative_verdicts() {
        assert!(verdict_matches("passes", "holds-relative-to-sample"));
        assert!(!verdict_matches("holds", "holds-relative-to-sample"));
        assert!(!verdict_matches("passes", "unknown"));
    }

    #[test]
    fn epsilon_signs() {
        assert_eq!(epsilon_sign(&[json!("( -1 + 0 i ) I")]), "-1");
        assert_eq!(epsilon_sign(&[json!("( 1 + 0 i ) I")]), "+1");
        assert_eq!(epsilon_sign(&[json!("a"), json!("b")]), "2 distinct values");
    }

    #[test]
    fn unknown_verdicts_mismatch_only_when_conclusive_results_are_required() {
        let poset = json!({ "elements": 3, "group_order": 1, "axioms": { "K7": { "verdict": "unknown", "reason": "budget" } } });
        for (extra, mismatches) in [("", 0), (r#","require_conclusive":true"#, 1)] {
            let mut r = Report::new(Suite::PosetCheck, &config(extra)).unwrap();
            r.poset = Some(poset.clone());
            r.finish();
            assert_eq!(r.mismatches(), mismatches);
            assert_eq!(r.exit_kind() as i32, mismatches as i32);
        }
    }
}
