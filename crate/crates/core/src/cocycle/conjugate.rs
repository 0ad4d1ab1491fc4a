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

//! Statistics phase, dimension and conjugates of simple cocycles.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_integer::Roots;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::arrows::arrow_space;
use super::tensor::{epsilon, epsilon_with, rho, tensor, tensor_arrows};
use super::verify::Check;
use super::{Cocycle, CocycleError, Intertwiner, Provenance};
use crate::paulinet::PauliElement;
use crate::scalar::Gauss;
use crate::simplicial::Path;

pub const CHOICE_INDEPENDENCE: &str = "conjugate-choice-independence";
pub const ROBERTS_CONSISTENCY: &str = "conjugate-roberts-consistency";
pub const LEFT_UNIT: &str = "x-tensor-conjugate-is-unit";
pub const RIGHT_UNIT: &str = "conjugate-tensor-x-is-unit";
pub const CONJUGATE_EQUATIONS: &str = "conjugate-equations";

/// Elements disjoint from `a` used to cross-check auxiliary choices: one per component of the
/// complement plus the last one by index.
pub fn alternative_disjoint(x: &Cocycle, a: usize) -> Vec<usize> {
    let p = x.frame().poset();
    let comp = p.complement_set(a);
    let mut out: BTreeSet<usize> = p.components_within(comp).iter().map(|c| c[0]).collect();
    if let Some(last) = comp.iter().last() {
        out.insert(last);
    }
    out.into_iter().collect()
}

/// `X̄_b = X(∂₀b → ã) X(ã → ∂₁b)` with `ã ⊥ |b|`, plus the first auxiliary choice that gives a
/// different value.
fn roberts_conjugate(x: &Cocycle) -> Result<(Vec<PauliElement>, Option<String>), CocycleError> {
    let f = x.frame();
    let p = f.poset();
    let ones = f.ones();
    let results: Vec<Result<(PauliElement, Option<String>), CocycleError>> = ones
        .par_iter()
        .map(|b| {
            let s = b.support();
            let at = f.disjoint_of(s).ok_or_else(|| CocycleError::NoDisjoint(p.ids[s].clone()))?;
            let value = |a: usize| -> Result<PauliElement, CocycleError> { Ok(x.transport(b.to(), a)?.mul(&x.transport(a, b.from())?)) };
            let v = value(at)?;
            let mut differs = None;
            for alt in alternative_disjoint(x, s) {
                let w = value(alt)?;
                if w != v {
                    differs = Some(format!("b = {}: via {} gives {v}, via {} gives {w}", f.simplex_name(b), p.ids[at], p.ids[alt]));
                    break;
                }
            }
            Ok((v, differs))
        })
        .collect();
    let mut values = Vec::with_capacity(ones.len());
    let mut first = None;
    for r in results {
        let (v, d) = r?;
        values.push(v);
        if first.is_none() {
            first = d;
        }
    }
    Ok((values, first))
}

fn roberts_cocycle(x: &Cocycle, values: Vec<PauliElement>) -> Result<Cocycle, CocycleError> {
    let rows = vec![values; x.frame().group_len()];
    Cocycle::from_values(x.frame().clone(), rows, Provenance::Synthetic { note: "conjugate".into() })
}

/// Common scalar of `ε(X, X)`, if every component is the same `±1`.
fn simple_phase(eps: &[PauliElement]) -> Option<Gauss> {
    let c = eps.first()?.as_scalar()?;
    let ok = (c == Gauss::one() || c == -Gauss::one()) && eps.iter().all(|e| e.as_scalar() == Some(c));
    ok.then_some(c)
}

fn all_epsilon(x: &Cocycle) -> Result<Vec<PauliElement>, CocycleError> {
    (0..x.frame().poset().len()).into_par_iter().map(|a| epsilon(x, x, a)).collect()
}

#[derive(Clone, Debug)]
pub struct Conjugate {
    pub xbar: Arc<Cocycle>,
    pub checks: Vec<Check>,
}

impl Conjugate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::holds)
    }
}

/// `X̄_b(λ) = ρ̄(∂₁b)_{|b|}(X_b(λ)*)`, with `ρ̄` built from the bar cocycle, and the checks
/// that make it a conjugate with `r = r̄ = 1`.
pub fn conjugate(x: &Arc<Cocycle>) -> Result<Conjugate, CocycleError> {
    let eps = all_epsilon(x)?;
    if simple_phase(&eps).is_none() {
        let a = eps.iter().position(|e| e.as_scalar().is_none()).unwrap_or(0);
        return Err(CocycleError::NotSimple(format!("epsilon at {} is {}", x.frame().poset().ids[a], eps[a])));
    }
    let f = x.frame();
    let ones = f.ones();
    let (roberts, differs) = roberts_conjugate(x)?;
    let bar = roberts_cocycle(x, roberts.clone())?;
    let rows = (0..f.group_len())
        .map(|g| {
            ones.par_iter()
                .enumerate()
                .map(|(k, b)| rho(&bar, b.from(), b.support(), &x.stored(g, k).adjoint()))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let xbar = Arc::new(Cocycle::from_values(f.clone(), rows, Provenance::Synthetic { note: "conjugate".into() })?);
    let mut checks = vec![Check::from_first_failure(CHOICE_INDEPENDENCE, ones.len() as u64, differs)];
    let mismatch = (0..ones.len())
        .find(|&k| *xbar.stored(0, k) != roberts[k])
        .map(|k| format!("b = {}: {} != {}", f.simplex_name(&ones[k]), xbar.stored(0, k), roberts[k]));
    checks.push(Check::from_first_failure(ROBERTS_CONSISTENCY, ones.len() as u64, mismatch));
    let unit = Arc::new(Cocycle::identity(f.clone()));
    let x_xbar = Arc::new(tensor(x, &xbar)?);
    let xbar_x = Arc::new(tensor(&xbar, x)?);
    for (name, prod) in [(LEFT_UNIT, &x_xbar), (RIGHT_UNIT, &xbar_x)] {
        let bad = prod.values().iter().enumerate().find_map(|(g, row)| {
            row.iter()
                .position(|v| *v != PauliElement::identity())
                .map(|k| format!("lambda = {}, b = {}: {}", f.poset().group[g], f.simplex_name(&ones[k]), row[k]))
        });
        checks.push(Check::from_first_failure(name, (ones.len() * f.group_len()) as u64, bad));
    }
    checks.push(conjugate_equations(x, &xbar, &unit, &x_xbar, &xbar_x));
    Ok(Conjugate { xbar, checks })
}

/// `(r̄* ⊗ 1_X)(1_X ⊗ r) = 1_X` and `(r* ⊗ 1_X̄)(1_X̄ ⊗ r̄) = 1_X̄` with `r = r̄ = 1`.
fn conjugate_equations(x: &Arc<Cocycle>, xbar: &Arc<Cocycle>, unit: &Arc<Cocycle>, x_xbar: &Arc<Cocycle>, xbar_x: &Arc<Cocycle>) -> Check {
    let n = x.frame().poset().len();
    let run = || -> Result<Option<String>, CocycleError> {
        let r = Intertwiner::new(unit.clone(), xbar_x.clone(), vec![PauliElement::identity(); n])?;
        let rbar = Intertwiner::new(unit.clone(), x_xbar.clone(), vec![PauliElement::identity(); n])?;
        for (name, arrow) in [("r", &r), ("rbar", &rbar)] {
            let c = arrow.verify();
            if !c.holds() {
                return Ok(Some(format!("{name} is not an arrow: {}", c.witness.unwrap_or_default())));
            }
        }
        let cases = [("X", x, &r, &rbar), ("Xbar", xbar, &rbar, &r)];
        for (name, obj, right, left) in cases {
            let one = Intertwiner::identity(obj.clone());
            let first = tensor_arrows(&one, right)?;
            let second = tensor_arrows(&left.adjoint(), &one)?;
            let composite = second.compose(&first)?;
            if *composite.source().as_ref() != **obj || *composite.target().as_ref() != **obj {
                return Ok(Some(format!("composite for {name} does not start and end at {name}")));
            }
            if let Some(a) = (0..n).find(|&a| *composite.value(a) != PauliElement::identity()) {
                return Ok(Some(format!("composite for {name} at {} is {}", x.frame().poset().ids[a], composite.value(a))));
            }
        }
        Ok(None)
    };
    let failure = run().unwrap_or_else(|e| Some(e.to_string()));
    Check::from_first_failure(CONJUGATE_EQUATIONS, 2 * n as u64, failure)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatisticsOptions {
    pub seed: u64,
    pub path_pairs: usize,
}

/// The `ε(X, X)` values seen over different path choices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathDependence {
    pub samples: usize,
    pub values: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annotation: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatisticsReport {
    pub simple: bool,
    /// `+1`, `-1`, or absent when undefined.
    pub chi: Option<i8>,
    pub dimension: Option<u64>,
    /// `(X, X)` is one-dimensional; absent when not computed.
    pub irreducible: Option<bool>,
    pub path_dependence: PathDependence,
}

/// Paths from `a` to two disjoint elements, one pair per sample, plus the trivial path against a
/// route into each component of the complement of `a`.
fn sample_path_pairs(x: &Cocycle, seed: u64, count: usize) -> Vec<(Path, Path)> {
    let f = x.frame();
    let p = f.poset();
    let n = p.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 50 * count {
        attempts += 1;
        let a = rng.gen_range(0..n);
        let u = rng.gen_range(0..n);
        let comp: Vec<usize> = p.complement_set(u).iter().collect();
        if comp.is_empty() {
            continue;
        }
        let v = comp[rng.gen_range(0..comp.len())];
        if let (Ok(pp), Ok(qq)) = (f.route(a, u), f.route(a, v)) {
            out.push((pp, qq));
        }
    }
    let a = rng.gen_range(0..n);
    for c in alternative_disjoint(x, a) {
        if let Ok(q) = f.route(a, c) {
            out.push((Path::trivial(a), q));
        }
    }
    out
}

pub fn complements_connected(x: &Cocycle) -> bool {
    let p = x.frame().poset();
    (0..p.len()).all(|a| p.components_within(p.complement_set(a)).len() <= 1)
}

/// Simplicity, `χ(X)` and `d(X)` from `φ(ε(X, X)) = (χ / d) 1`, and the observed path dependence
/// of `ε`.
pub fn statistics(x: &Arc<Cocycle>, opts: &StatisticsOptions) -> Result<StatisticsReport, CocycleError> {
    let eps = all_epsilon(x)?;
    let pairs = sample_path_pairs(x, opts.seed, opts.path_pairs);
    let sampled = pairs.par_iter().map(|(p, q)| epsilon_with(x, x, p, q)).collect::<Result<Vec<_>, _>>()?;
    let mut seen: Vec<PauliElement> = Vec::new();
    for v in sampled.iter().chain(&eps) {
        if !seen.contains(v) {
            seen.push(v.clone());
        }
    }
    let annotation = (!complements_connected(x))
        .then(|| "causal complements are disconnected here, so path independence is observed on samples only".to_string());
    let path_dependence = PathDependence { samples: sampled.len() + eps.len(), values: seen.iter().map(|v| v.to_string()).collect(), annotation };
    if seen.len() > 1 {
        return Err(CocycleError::PathDependent { first: seen[0].to_string(), second: seen[1].to_string() });
    }
    if simple_phase(&eps).is_none() {
        return Ok(StatisticsReport { simple: false, chi: None, dimension: None, irreducible: None, path_dependence });
    }
    let (roberts, _) = roberts_conjugate(x)?;
    let bar = roberts_cocycle(x, roberts)?;
    let phi = (0..eps.len()).map(|a| rho(&bar, a, a, &eps[a])).collect::<Result<Vec<_>, _>>()?;
    let c = phi[0].as_scalar().filter(|c| phi.iter().all(|v| v.as_scalar() == Some(*c)));
    let (chi, dimension) = match c {
        Some(c) if !c.is_zero() => {
            let norm = c.norm_sqr();
            let inv = norm.recip();
            let d = if inv.is_integer() && inv.to_integer().sqrt().pow(2) == inv.to_integer() { Some(inv.to_integer().sqrt() as u64) } else { None };
            let chi = d.and_then(|d| {
                let unit = c * Gauss::from_int(d as i128);
                if unit == Gauss::one() {
                    Some(1)
                } else if unit == -Gauss::one() {
                    Some(-1)
                } else {
                    None
                }
            });
            (chi, d)
        }
        _ => (None, None),
    };
    let irreducible = arrow_space(x, x).ok().map(|s| s.is_scalar());
    Ok(StatisticsReport { simple: true, chi, dimension, irreducible, path_dependence })
}

#[cfg(test)]
mod tests {
    use super::super::testnets::*;
    use super::super::*;
    use super::*;

    #[test]
    fn boson_statistics_and_conjugate() {
        let (frame, family) = small_grid();
        let x = Arc::new(charge_pair(frame, centre_sites(&family).unwrap(), Charge::Z, &Character::trivial(8)).unwrap());
        let s = statistics(&x, &StatisticsOptions { seed: 4, path_pairs: 10 }).unwrap();
        assert!(s.simple);
        assert_eq!((s.chi, s.dimension, s.irreducible), (Some(1), Some(1), Some(true)));
        assert_eq!(s.path_dependence.values, vec!["( 1 + 0 i ) I".to_string()]);
        let c = conjugate(&x).unwrap();
        assert!(c.passed(), "{:?}", c.checks);
        assert!(verify_cocycle(&c.xbar, &VerifyOptions::seeded(5)).passed());
    }

    #[test]
    fn unit_statistics() {
        let (frame, _) = small_grid();
        let i = Arc::new(Cocycle::identity(frame));
        let s = statistics(&i, &StatisticsOptions { seed: 4, path_pairs: 3 }).unwrap();
        assert_eq!((s.chi, s.dimension), (Some(1), Some(1)));
        let c = conjugate(&i).unwrap();
        assert_eq!(c.xbar.values(), i.values());
    }

    #[test]
    fn fermion_statistics_are_annotated() {
        let (frame, family) = chain();
        let x = Arc::new(charge_pair(frame, centre_sites(&family).unwrap(), Charge::Majorana, &Character::trivial(1)).unwrap());
        let s = statistics(&x, &StatisticsOptions { seed: 4, path_pairs: 10 }).unwrap();
        assert_eq!(s.chi, Some(-1));
        assert_eq!(s.dimension, Some(1));
        assert!(s.path_dependence.annotation.is_some());
    }
}
