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

//! Batch front end: scenario files in, `report.json` and `summary.txt` out.

pub mod config;
pub mod report;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use crate::cocycle::{
    centre_sites, charge_pair, conjugate, statistics, verify_cocycle, Character, Cocycle, CocycleError, CocycleReport, Frame, StatisticsOptions,
    VerifyOptions,
};
use crate::morphisms::{functor_z_to_d, morphism_laws, pole_change, round_trip, verify_delta, Equivalence, MorphismError};
use crate::paulinet::{check_net, Net, NetError};
use crate::poset::{build_poset, check_axioms, h1, Budget, IndexPoset};
use crate::regions::{sample_family, RegionFamily};

pub use config::{Config, ConfigError};
pub use report::{Expectation, Report, REPORT_SCHEMA_VERSION};

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitKind {
    Ok = 0,
    Mismatch = 1,
    Config = 2,
    Internal = 3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Poset construction, axioms K1-K7 and first homology.
    PosetCheck,
    /// Local algebras: isotony, causality, factoriality, irreducibility, duality, covariance.
    NetCheck,
    /// Cocycle identities and the laws of the induced morphisms.
    CocycleVerify,
    /// Permutation symmetry, statistics and conjugates.
    Statistics,
    /// Cocycles to morphism fields and back, and pole changes.
    FunctorRoundtrip,
    /// Every suite.
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::PosetCheck => "poset-check",
            Suite::NetCheck => "net-check",
            Suite::CocycleVerify => "cocycle-verify",
            Suite::Statistics => "statistics",
            Suite::FunctorRoundtrip => "functor-roundtrip",
            Suite::All => "all",
        }
    }

    fn runs(self, s: Suite) -> bool {
        self == Suite::All || self == s
    }

    fn needs_net(self) -> bool {
        !matches!(self, Suite::PosetCheck)
    }
}

#[derive(Parser, Debug)]
#[command(name = "sectorkit", version, about = "Exact checks on finite causal posets, Pauli nets and covariant cocycles")]
struct Cli {
    #[arg(value_enum)]
    suite: Suite,
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Worker threads; reports do not depend on it.
    #[arg(long)]
    jobs: Option<usize>,
    /// Overrides the number of homotopic path pairs checked.
    #[arg(long)]
    budget_homotopy: Option<usize>,
    /// Overrides the coset enumeration row limit.
    #[arg(long)]
    budget_cosets: Option<usize>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub homotopy_pairs: Option<usize>,
    pub coset_rows: Option<usize>,
}

#[derive(Debug)]
pub enum RunError {
    Config(ConfigError),
    Internal(String),
}

impl RunError {
    pub fn exit(&self) -> ExitKind {
        match self {
            RunError::Config(_) => ExitKind::Config,
            RunError::Internal(_) => ExitKind::Internal,
        }
    }
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Config(e) => write!(f, "config error: {e}"),
            RunError::Internal(e) => write!(f, "internal invariant violation: {e}"),
        }
    }
}

fn config_err(path: &str, message: impl ToString) -> RunError {
    RunError::Config(ConfigError { path: path.into(), message: message.to_string() })
}

fn internal(e: impl ToString) -> RunError {
    RunError::Internal(e.to_string())
}

/// Parses arguments, runs the suite and writes the outputs; returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { ExitKind::Config as i32 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let overrides = Overrides { homotopy_pairs: cli.budget_homotopy, coset_rows: cli.budget_cosets };
    let outcome = std::panic::catch_unwind(|| execute(cli.suite, &cli.config, &cli.out, cli.jobs, overrides));
    match outcome {
        Ok(Ok(kind)) => kind as i32,
        Ok(Err(e)) => {
            eprintln!("sectorkit: {e}");
            e.exit() as i32
        }
        Err(_) => {
            eprintln!("sectorkit: internal invariant violation: a check panicked");
            ExitKind::Internal as i32
        }
    }
}

/// Reads the config, runs the suite on a pool of `jobs` threads and writes both outputs.
pub fn execute(suite: Suite, config: &Path, out: &Path, jobs: Option<usize>, overrides: Overrides) -> Result<ExitKind, RunError> {
    let text = std::fs::read_to_string(config).map_err(|e| config_err("", format!("cannot read {}: {e}", config.display())))?;
    let config = Config::parse(&text).map_err(RunError::Config)?;
    if jobs == Some(0) {
        return Err(config_err("", "--jobs must be positive"));
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.unwrap_or(0)).build().map_err(internal)?;
    let report = pool.install(|| run(suite, &config, overrides))?;
    std::fs::create_dir_all(out).map_err(internal)?;
    std::fs::write(out.join("report.json"), report.to_json_string()).map_err(internal)?;
    std::fs::write(out.join("summary.txt"), report.summary()).map_err(internal)?;
    Ok(report.exit_kind())
}

fn family_of(config: &Config) -> Result<(RegionFamily, IndexPoset), RunError> {
    let family = sample_family(&config.family).map_err(|e| config_err("family", e))?;
    let poset = build_poset(&family).map_err(internal)?;
    Ok((family, poset))
}

fn net_error(e: NetError) -> RunError {
    match e {
        NetError::NoLattice | NetError::TooManySites(_) | NetError::UnsupportedRegion(_) | NetError::SiteNotClosed { .. } => config_err("net", e),
        other => internal(other),
    }
}

fn cocycle_of(config: &Config, i: usize, frame: &Arc<Frame>, family: &RegionFamily) -> Result<Arc<Cocycle>, RunError> {
    let c = &config.cocycles[i];
    let path = format!("cocycles[{i}]");
    let sites = centre_sites(family).map_err(|e| config_err(&path, e))?;
    let actions: Vec<_> = family.symmetries.iter().map(|s| s.action.clone()).collect();
    let chi = Character::from_actions(c.character, &actions).map_err(|e| config_err(&format!("{path}.character"), e))?;
    let x = charge_pair(frame.clone(), sites, c.charge, &chi).map_err(|e| match e {
        CocycleError::BadCharacter(_) | CocycleError::NotEquivariant { .. } | CocycleError::SiteOutsideRegion { .. } => config_err(&path, e),
        other => internal(other),
    })?;
    Ok(Arc::new(x))
}

fn poles(config: &Config, p: &IndexPoset) -> Result<Vec<usize>, RunError> {
    let mut out = Vec::new();
    for (i, id) in config.poles.iter().enumerate() {
        out.push(p.index_of(id).map_err(|e| config_err(&format!("poles[{i}]"), e))?);
    }
    if out.is_empty() {
        out.push(0);
    }
    if out.len() == 1 && p.len() > 1 {
        out.push(if out[0] == p.len() - 1 { 0 } else { p.len() - 1 });
    }
    Ok(out)
}

fn error_value(e: impl ToString) -> Value {
    json!({ "error": e.to_string() })
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value, RunError> {
    serde_json::to_value(v).map_err(internal)
}

fn equivalence_value(eq: &Equivalence, poles: &[&str]) -> Value {
    json!({
        "poles": poles,
        "identical": eq.identical,
        "unitary_is_identity": eq.unitary.is_identity(),
        "check": eq.check,
    })
}

/// Runs the suite and assembles the report.
pub fn run(suite: Suite, config: &Config, overrides: Overrides) -> Result<Report, RunError> {
    let mut effective = config.clone();
    if let Some(h) = overrides.homotopy_pairs {
        effective.budgets.homotopy_pairs = h;
    }
    if let Some(c) = overrides.coset_rows {
        if c == 0 {
            return Err(config_err("budgets.coset_rows", "must be positive"));
        }
        effective.budgets.coset_rows = c;
    }
    let config = &effective;
    let budgets = config.budgets;
    let (family, poset) = family_of(config)?;
    let mut report = Report::new(suite, config)?;

    let wants_poset = suite.runs(Suite::PosetCheck);
    if wants_poset {
        let axioms = check_axioms(&poset, Budget { coset_rows: budgets.coset_rows });
        let homology = h1(&poset);
        report.record_poset(&poset, &axioms, homology.as_ref().ok(), homology.as_ref().err().map(|e| e.to_string()))?;
    } else {
        report.poset = Some(json!({ "elements": poset.len(), "group_order": poset.group_len() }));
    }
    let poles = poles(config, &poset)?;
    if !suite.needs_net() {
        report.finish();
        return Ok(report);
    }
    let Some(net_config) = &config.net else {
        if suite == Suite::All {
            report.finish();
            return Ok(report);
        }
        return Err(config_err("net", format!("the {} suite needs a net", suite.name())));
    };
    let net = Net::from_family(&family, poset.clone(), net_config.model).map_err(net_error)?;
    let sites = family.lattice.as_ref().map_or(0, |l| l.points.len());
    if suite.runs(Suite::NetCheck) {
        let checks = check_net(&net);
        report.record_net(net_config.model, sites, &checks)?;
    }
    let frame = Arc::new(Frame::new(net));
    let mut entries = Vec::new();
    for (i, c) in config.cocycles.iter().enumerate() {
        let x = cocycle_of(config, i, &frame, &family)?;
        let mut entry = serde_json::Map::new();
        entry.insert("name".into(), json!(c.name));
        entry.insert("charge".into(), to_value(&c.charge)?);
        entry.insert("character".into(), to_value(&c.character)?);
        if suite.runs(Suite::CocycleVerify) {
            let opts = VerifyOptions {
                seed: config.seed,
                homotopy_pairs: budgets.homotopy_pairs,
                homotopy_moves: budgets.homotopy_moves,
                transport_samples: budgets.transport_samples,
            };
            entry.insert("verify".into(), to_value(&verify_cocycle(&x, &opts))?);
            let laws: Result<CocycleReport, MorphismError> = morphism_laws(&x);
            entry.insert("morphism_laws".into(), laws.map_or_else(error_value, |r| json!(r)));
        }
        if suite.runs(Suite::Statistics) {
            let opts = StatisticsOptions { seed: config.seed, path_pairs: budgets.path_pairs };
            entry.insert("statistics".into(), statistics(&x, &opts).map_or_else(error_value, |s| json!(s)));
            let conj = conjugate(&x).map_or_else(error_value, |c| {
                let verify = verify_cocycle(&c.xbar, &VerifyOptions::seeded(config.seed));
                json!({ "checks": c.checks, "verify": verify })
            });
            entry.insert("conjugate".into(), conj);
        }
        if suite.runs(Suite::FunctorRoundtrip) {
            let ids: Vec<&str> = poles.iter().map(|a| poset.ids[*a].as_str()).collect();
            let obj = functor_z_to_d(&x);
            entry.insert("delta".into(), obj.as_ref().map_or_else(error_value, |o| json!(verify_delta(o))));
            let trips: Vec<Value> = poles
                .iter()
                .zip(&ids)
                .map(|(&a, id)| round_trip(&x, a).map_or_else(error_value, |eq| equivalence_value(&eq, &[id])))
                .collect();
            entry.insert("round_trip".into(), Value::Array(trips));
            let change = match &obj {
                Ok(o) if poles.len() > 1 => pole_change(o, poles[0], poles[1]).map_or_else(error_value, |eq| equivalence_value(&eq, &ids[..2])),
                Ok(_) => error_value("a single element has no second pole"),
                Err(e) => error_value(e),
            };
            entry.insert("pole_change".into(), change);
        }
        entries.push(Value::Object(entry));
    }
    report.cocycles = Some(entries);
    report.finish();
    Ok(report)
}
