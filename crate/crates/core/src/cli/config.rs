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

//! Scenario configuration files.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cocycle::{Charge, CharacterKind};
use crate::paulinet::NetModel;
use crate::regions::FamilyParams;

pub const CONFIG_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub schema_version: u32,
    pub name: String,
    pub seed: u64,
    pub family: FamilyParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub net: Option<NetConfig>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cocycles: Vec<CocycleConfig>,
    /// Region ids used as poles for the round trip and the pole change; defaults to the first and
    /// last element.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub poles: Vec<String>,
    #[serde(default)]
    pub budgets: Budgets,
    /// Treat unknown verdicts as mismatches.
    #[serde(default)]
    pub require_conclusive: bool,
    #[serde(default)]
    pub expect: Expectations,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetConfig {
    pub model: NetModel,
}

/// A charge-pair cocycle with charges at the centre sites of the regions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleConfig {
    pub name: String,
    pub charge: Charge,
    pub character: CharacterKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Budgets {
    pub homotopy_pairs: usize,
    pub homotopy_moves: usize,
    pub transport_samples: usize,
    pub path_pairs: usize,
    pub coset_rows: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Self { homotopy_pairs: 50, homotopy_moves: 6, transport_samples: 50, path_pairs: 10, coset_rows: 1_000_000 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct H1Expectation {
    pub rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
}

/// Declared verdicts. Verdict strings are `holds`, `holds-relative-to-sample`, `passes` (either of
/// the two), `fails` and `unknown`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectations {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub axioms: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h1: Option<H1Expectation>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub net: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cocycles: BTreeMap<String, CocycleExpectation>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleExpectation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verify: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morphism_laws: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjugate: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub round_trip: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pole_change: Option<String>,
    /// `+1` or `-1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simple: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub irreducible: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path_dependence_annotated: Option<bool>,
}

pub const AXIOM_NAMES: [&str; 7] = ["K1", "K2", "K3", "K4", "K5", "K6", "K7"];
pub const NET_CHECKS: [&str; 6] = ["isotony", "causality", "factoriality", "irreducibility", "duality", "covariance"];
pub const VERDICTS: [&str; 5] = ["holds", "holds-relative-to-sample", "passes", "fails", "unknown"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    /// Location of the first problem, as a dotted path into the document.
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for ConfigError {}

fn err(path: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError { path: path.into(), message: message.into() }
}

fn check_verdict(path: String, v: &str) -> Result<(), ConfigError> {
    if VERDICTS.contains(&v) {
        Ok(())
    } else {
        Err(err(path, format!("unknown verdict `{v}`, expected one of {}", VERDICTS.join(", "))))
    }
}

impl Config {
    /// Parses and validates everything that does not need the sampled family.
    pub fn parse(text: &str) -> Result<Config, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let config: Config = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            err(if path == "." { String::new() } else { path }, e.into_inner().to_string())
        })?;
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        if self.schema_version != CONFIG_VERSION {
            return Err(err("schema_version", format!("unsupported version {}, expected {CONFIG_VERSION}", self.schema_version)));
        }
        if self.name.is_empty() {
            return Err(err("name", "must not be empty"));
        }
        if !self.cocycles.is_empty() && self.net.is_none() {
            return Err(err("cocycles", "cocycles need a net"));
        }
        let mut names = BTreeSet::new();
        for (i, c) in self.cocycles.iter().enumerate() {
            if !names.insert(c.name.as_str()) {
                return Err(err(format!("cocycles[{i}].name"), format!("duplicate name `{}`", c.name)));
            }
        }
        let b = &self.budgets;
        if b.coset_rows == 0 {
            return Err(err("budgets.coset_rows", "must be positive"));
        }
        for (k, v) in &self.expect.axioms {
            if !AXIOM_NAMES.contains(&k.as_str()) {
                return Err(err(format!("expect.axioms.{k}"), "unknown axiom"));
            }
            check_verdict(format!("expect.axioms.{k}"), v)?;
        }
        for (k, v) in &self.expect.net {
            if !NET_CHECKS.contains(&k.as_str()) {
                return Err(err(format!("expect.net.{k}"), "unknown net check"));
            }
            check_verdict(format!("expect.net.{k}"), v)?;
        }
        if !self.expect.net.is_empty() && self.net.is_none() {
            return Err(err("expect.net", "net expectations need a net"));
        }
        for (name, e) in &self.expect.cocycles {
            let path = format!("expect.cocycles.{name}");
            if !names.contains(name.as_str()) {
                return Err(err(path, "no cocycle with this name"));
            }
            let verdicts = [("verify", &e.verify), ("morphism_laws", &e.morphism_laws), ("conjugate", &e.conjugate), ("round_trip", &e.round_trip), ("pole_change", &e.pole_change)];
            for (k, v) in verdicts {
                if let Some(v) = v {
                    check_verdict(format!("{path}.{k}"), v)?;
                }
            }
            if let Some(eps) = &e.epsilon {
                if eps != "+1" && eps != "-1" {
                    return Err(err(format!("{path}.epsilon"), "expected `+1` or `-1`"));
                }
            }
            if let Some(chi) = e.chi {
                if chi != 1 && chi != -1 {
                    return Err(err(format!("{path}.chi"), "expected 1 or -1"));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{"schema_version":1,"name":"m","seed":3,"family":{"kind":"circle-arcs","n":12,"radii":["1/12","1/6"]}}"#;

    #[test]
    fn minimal_config_gets_defaults() {
        let c = Config::parse(MINIMAL).unwrap();
        assert_eq!(c.budgets, Budgets::default());
        assert!(c.cocycles.is_empty() && c.net.is_none() && !c.require_conclusive);
    }

    #[test]
    fn seed_is_mandatory() {
        let text = MINIMAL.replace(r#""seed":3,"#, "");
        let e = Config::parse(&text).unwrap_err();
        assert!(e.message.contains("seed"), "{e}");
    }

    #[test]
    fn errors_carry_the_path() {
        let text = MINIMAL.replace(r#""radii""#, r#""radius""#);
        assert_eq!(Config::parse(&text).unwrap_err().path, "family");
        let base = &MINIMAL[..MINIMAL.len() - 1];
        let e = Config::parse(&format!(r#"{base},"expect":{{"axioms":{{"K6":"maybe"}}}}}}"#)).unwrap_err();
        assert_eq!(e.path, "expect.axioms.K6");
        let e = Config::parse(&format!(r#"{base},"budgets":{{"coset_rows":"x"}}}}"#)).unwrap_err();
        assert_eq!(e.path, "budgets.coset_rows");
    }

    #[test]
    fn cocycles_need_a_net_and_unique_names() {
        let base = &MINIMAL[..MINIMAL.len() - 1];
        let c = r#"{"name":"x","charge":"z","character":"trivial"}"#;
        let e = Config::parse(&format!(r#"{base},"cocycles":[{c}]}}"#)).unwrap_err();
        assert_eq!(e.path, "cocycles");
        let e = Config::parse(&format!(r#"{base},"net":{{"model":"even-z2"}},"cocycles":[{c},{c}]}}"#)).unwrap_err();
        assert_eq!(e.path, "cocycles[1].name");
        let e = Config::parse(&format!(r#"{base},"net":{{"model":"even-z2"}},"cocycles":[{c}],"expect":{{"cocycles":{{"y":{{}}}}}}}}"#)).unwrap_err();
        assert_eq!(e.path, "expect.cocycles.y");
    }
}
