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

//! Exhaustive and sampled checks of the cocycle laws.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Cocycle, Frame};
use crate::paulinet::PauliElement;
use crate::simplicial::{elementary_deformations, Move, Path};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckVerdict {
    Holds,
    Fails,
    Unknown,
}

/// One named check with the number of instances examined and the first failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub check: String,
    pub instances_checked: u64,
    pub verdict: CheckVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn from_first_failure(name: &str, instances: u64, failure: Option<String>) -> Self {
        Self {
            check: name.to_string(),
            instances_checked: instances,
            verdict: if failure.is_some() { CheckVerdict::Fails } else { CheckVerdict::Holds },
            witness: failure,
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict == CheckVerdict::Holds
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleReport {
    pub checks: Vec<Check>,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::holds)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.check == name)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.holds())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub seed: u64,
    pub homotopy_pairs: usize,
    /// Deformation moves applied to produce each homotopic partner.
    pub homotopy_moves: usize,
    pub transport_samples: usize,
}

impl VerifyOptions {
    pub fn seeded(seed: u64) -> Self {
        Self { seed, homotopy_pairs: 50, homotopy_moves: 6, transport_samples: 50 }
    }
}

pub const UNITARY_LOCAL: &str = "unitary-and-local";
pub const COCYCLE_IDENTITY: &str = "cocycle-identity";
pub const ROBERTS_IDENTITY: &str = "roberts-identity";
pub const DEGENERATE_IDENTITY: &str = "degenerate-identity";
pub const OBJECT_VALUES: &str = "object-values-well-defined";
pub const HOMOTOPY: &str = "homotopy-invariance";
pub const TRANSPORT_COVARIANCE: &str = "transport-covariance";

/// Runs every check; never stops early.
pub fn verify_cocycle(x: &Cocycle, opts: &VerifyOptions) -> CocycleReport {
    CocycleReport {
        checks: vec![
            check_unitary_local(x),
            check_cocycle_identity(x),
            check_roberts(x),
            check_degenerate(x),
            check_object_values(x),
            check_homotopy(x, opts),
            check_transport_covariance(x, opts),
        ],
    }
}

fn check_unitary_local(x: &Cocycle) -> Check {
    let f = x.frame();
    let ones = f.ones();
    let failure = (0..f.group_len())
        .into_par_iter()
        .flat_map_iter(|g| (0..ones.len()).map(move |k| (g, k)))
        .find_map_first(|(g, k)| {
            let v = x.stored(g, k);
            let b = &ones[k];
            if !v.is_unitary() {
                Some(format!("X_{}({}) = {v} is not unitary", f.simplex_name(b), f.poset().group[g]))
            } else if !f.net().algebra(b.support()).contains(v) {
                Some(format!("X_{}({}) = {v} is outside the local algebra", f.simplex_name(b), f.poset().group[g]))
            } else {
                None
            }
        });
    Check::from_first_failure(UNITARY_LOCAL, (f.group_len() * ones.len()) as u64, failure)
}

fn check_cocycle_identity(x: &Cocycle) -> Check {
    let f = x.frame();
    let p = f.poset();
    let tris = f.two_simplices();
    let n = f.group_len();
    let failure = tris.par_iter().find_map_first(|t| {
        let [d0, d1, d2] = t.faces;
        for l in 0..n {
            for s in 0..n {
                let lhs = x.stored(p.table[s][l], d1);
                let rhs = f.alpha_inv(l, &x.value_moved(l, d0, s)).mul(x.stored(l, d2));
                if *lhs != rhs {
                    return Some(format!(
                        "c = {}, sigma = {}, lambda = {}: {lhs} != {rhs}",
                        f.tri_name(t),
                        p.group[s],
                        p.group[l]
                    ));
                }
            }
        }
        None
    });
    Check::from_first_failure(COCYCLE_IDENTITY, (tris.len() * n * n) as u64, failure)
}

fn check_roberts(x: &Cocycle) -> Check {
    let f = x.frame();
    let tris = f.two_simplices();
    let failure = tris.par_iter().find_map_first(|t| {
        let [d0, d1, d2] = t.faces;
        let lhs = x.stored(0, d0).mul(x.stored(0, d2));
        (lhs != *x.stored(0, d1)).then(|| format!("c = {}: {lhs} != {}", f.tri_name(t), x.stored(0, d1)))
    });
    Check::from_first_failure(ROBERTS_IDENTITY, tris.len() as u64, failure)
}

/// Degenerate 1-simplices `(o, o; s)` for every `s ⊇ o` evaluate to `1`.
fn check_degenerate(x: &Cocycle) -> Check {
    let f = x.frame();
    let p = f.poset();
    let pairs: Vec<(usize, usize)> = (0..p.len()).flat_map(|o| p.up(o).iter().map(move |s| (o, s))).collect();
    let one = PauliElement::identity();
    let failure = pairs.par_iter().find_map_first(|&(o, s)| {
        let b = crate::simplicial::Simplex::edge(p, o, o, s).ok()?;
        match x.value(&b, 0) {
            Ok(v) if v == one => None,
            Ok(v) => Some(format!("X_{} = {v}", f.simplex_name(&b))),
            Err(e) => Some(e.to_string()),
        }
    });
    Check::from_first_failure(DEGENERATE_IDENTITY, pairs.len() as u64, failure)
}

/// `X_o(λ)` computed through any larger support agrees: `X_{s→o}(λ) X_{o→s} = X_o(λ)`.
fn check_object_values(x: &Cocycle) -> Check {
    let f = x.frame();
    let p = f.poset();
    let pairs: Vec<(usize, usize)> = (0..p.len()).flat_map(|o| p.properly_above(o).iter().map(move |s| (o, s))).collect();
    let n = f.group_len();
    let failure = pairs.par_iter().find_map_first(|&(o, s)| {
        let up = f.edge_index(o, s)?;
        let down = f.edge_index(s, o)?;
        (0..n).find_map(|l| {
            let via = x.stored(l, down).mul(x.stored(0, up));
            (via != *x.evaluate_object(o, l)).then(|| {
                format!("o = {}, through {}, lambda = {}: {via} != {}", p.ids[o], p.ids[s], p.group[l], x.evaluate_object(o, l))
            })
        })
    });
    Check::from_first_failure(OBJECT_VALUES, (pairs.len() * n) as u64, failure)
}

/// A random walk of `len` canonical steps.
pub fn random_path(f: &Frame, rng: &mut ChaCha8Rng, len: usize) -> Path {
    let n = f.poset().len();
    let start = rng.gen_range(0..n);
    let mut steps = Vec::new();
    let mut v = start;
    for _ in 0..len {
        let nb = f.canonical().neighbours(v);
        let Some(&w) = nb.choose(rng) else { break };
        steps.push(f.ones()[f.edge_index(v, w).expect("neighbours are canonical")].clone());
        v = w;
    }
    if steps.is_empty() {
        Path::trivial(start)
    } else {
        Path::new(steps).expect("walks are chains")
    }
}

/// Seeded homotopic pairs produced by random elementary deformations; each pair carries its moves.
pub fn homotopic_pairs(f: &Frame, seed: u64, count: usize, moves: usize) -> Vec<(Path, Vec<Move>, Path)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < count * 20 {
        attempts += 1;
        let len = rng.gen_range(1..=5);
        let p = random_path(f, &mut rng, len);
        let mut q = p.clone();
        let mut done = Vec::new();
        for _ in 0..moves {
            let options: Vec<_> = elementary_deformations(&q, f.poset(), f.canonical())
                .into_iter()
                .filter(|(_, r)| r.len() <= 10)
                .collect();
            let Some((m, r)) = options.choose(&mut rng).cloned() else { break };
            done.push(m);
            q = r;
        }
        if q != p {
            out.push((p, done, q));
        }
    }
    out
}

fn check_homotopy(x: &Cocycle, opts: &VerifyOptions) -> Check {
    let f = x.frame();
    let pairs = homotopic_pairs(f, opts.seed, opts.homotopy_pairs, opts.homotopy_moves);
    let failure = pairs.par_iter().find_map_first(|(p, moves, q)| {
        if p.replay(f.poset(), moves).ok().as_ref() != Some(q) {
            return Some("deformation witness does not replay".to_string());
        }
        let (a, b) = (x.evaluate_path(p), x.evaluate_path(q));
        (a != b).then(|| {
            format!(
                "p = {}, q = {}: {} != {}",
                p.to_json(f.poset()),
                q.to_json(f.poset()),
                a.map(|v| v.to_string()).unwrap_or_else(|e| e.to_string()),
                b.map(|v| v.to_string()).unwrap_or_else(|e| e.to_string())
            )
        })
    });
    let mut c = Check::from_first_failure(HOMOTOPY, pairs.len() as u64, failure);
    if c.holds() && pairs.len() < opts.homotopy_pairs {
        c.verdict = CheckVerdict::Unknown;
        c.witness = Some(format!("only {} distinct pairs generated", pairs.len()));
    }
    c
}

/// `α_λ⁻¹(X_{λp}) X_o(λ) = X_õ(λ) X_p` for paths `p: o → õ` and every `λ`.
fn check_transport_covariance(x: &Cocycle, opts: &VerifyOptions) -> Check {
    let f = x.frame();
    let p = f.poset();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5eed);
    let paths: Vec<Path> = (0..opts.transport_samples)
        .map(|_| {
            let len = rng.gen_range(1..=6);
            random_path(f, &mut rng, len)
        })
        .collect();
    let n = f.group_len();
    let failure = paths.par_iter().find_map_first(|path| {
        let xp = match x.evaluate_path(path) {
            Ok(v) => v,
            Err(e) => return Some(e.to_string()),
        };
        for l in 0..n {
            let moved = path.act(p, l).ok()?;
            let xlp = match x.evaluate_path(&moved) {
                Ok(v) => v,
                Err(e) => return Some(e.to_string()),
            };
            let lhs = f.alpha_inv(l, &xlp).mul(x.evaluate_object(path.start(), l));
            let rhs = x.evaluate_object(path.end(), l).mul(&xp);
            if lhs != rhs {
                return Some(format!("p = {}, lambda = {}: {lhs} != {rhs}", path.to_json(p), p.group[l]));
            }
        }
        None
    });
    Check::from_first_failure(TRANSPORT_COVARIANCE, (paths.len() * n) as u64, failure)
}
