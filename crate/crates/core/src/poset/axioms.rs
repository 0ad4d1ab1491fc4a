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

//! Axiom checks K1-K7 on a finite index poset.
//!
//! Every failing verdict carries a witness that [`recheck`] can evaluate independently.

use super::fundamental::{pi1_trivial, Pi1Verdict};
use super::IndexPoset;
use crate::bits::BitSet;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Element indices; their meaning depends on the axiom.
    pub elements: Vec<usize>,
    /// Group element index, for K5.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<usize>,
    /// Closed path as `[from, to, support]` triples, for K7.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle: Option<Vec<[usize; 3]>>,
    pub detail: String,
}

impl Witness {
    pub fn elements(elements: Vec<usize>, detail: impl Into<String>) -> Self {
        Self { elements, symmetry: None, cycle: None, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    HoldsRelativeToSample { note: String },
    Fails { witness: Witness },
    Unknown { reason: String },
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fails { .. })
    }

    /// Holds outright or relative to the sample.
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Holds | Verdict::HoldsRelativeToSample { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::HoldsRelativeToSample { .. } => "holds-relative-to-sample",
            Verdict::Fails { .. } => "fails",
            Verdict::Unknown { .. } => "unknown",
        }
    }

    fn fails(w: Witness) -> Self {
        Verdict::Fails { witness: w }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Row limit for coset enumeration.
    pub coset_rows: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self { coset_rows: 1_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub k1: Verdict,
    pub k2: Verdict,
    pub k3: Verdict,
    pub k4: Verdict,
    pub k5: Verdict,
    pub k6: Verdict,
    pub k7: Verdict,
}

impl AxiomReport {
    pub fn verdicts(&self) -> [(&'static str, &Verdict); 7] {
        [
            ("K1", &self.k1),
            ("K2", &self.k2),
            ("K3", &self.k3),
            ("K4", &self.k4),
            ("K5", &self.k5),
            ("K6", &self.k6),
            ("K7", &self.k7),
        ]
    }
}

/// First index whose check returns a witness, scanning in parallel but reporting in order.
fn first_failure<F>(n: usize, f: F) -> Option<Witness>
where
    F: Fn(usize) -> Option<Witness> + Sync + Send,
{
    let found: Vec<Option<Witness>> = (0..n).into_par_iter().map(f).collect();
    found.into_iter().flatten().next()
}

fn k1(p: &IndexPoset) -> Verdict {
    let mut truncated = 0usize;
    for o in 0..p.len() {
        let below = !p.properly_below(o).is_empty();
        let above = !p.properly_above(o).is_empty();
        if !below && !above {
            return Verdict::fails(Witness::elements(vec![o], "no element properly below or above"));
        }
        if !(below && above) {
            truncated += 1;
        }
    }
    if truncated == 0 {
        Verdict::Holds
    } else {
        Verdict::HoldsRelativeToSample {
            note: format!("{truncated} extremal elements have a proper neighbour on one side only"),
        }
    }
}

/// `(o, a, ô)` with `o ⊥ a`, `ô ⊆ o` and not `ô ⊥ a`.
pub(crate) fn k2_violation(p: &IndexPoset) -> Option<Vec<usize>> {
    for o in 0..p.len() {
        for a in p.complement_set(o).iter() {
            let bad = p.down(o).minus(p.complement_set(a));
            if let Some(h) = bad.first() {
                return Some(vec![o, a, h]);
            }
        }
    }
    None
}

/// `(g, [a, o])` where the action breaks `a ⊂ o` or `a ⊥ o`.
pub(crate) fn k5_violation(p: &IndexPoset) -> Option<(usize, Vec<usize>)> {
    for g in 0..p.group_len() {
        for o in 0..p.len() {
            for a in p.properly_below(o).iter() {
                if !p.lt(p.act(g, a), p.act(g, o)) {
                    return Some((g, vec![a, o]));
                }
            }
            for a in p.complement_set(o).iter() {
                if !p.perp(p.act(g, a), p.act(g, o)) {
                    return Some((g, vec![a, o]));
                }
            }
        }
    }
    None
}

/// `o^⊥⊥`.
pub fn double_complement(p: &IndexPoset, o: usize) -> BitSet {
    let mut out = BitSet::full(p.len());
    for a in p.complement_set(o).iter() {
        out = out.intersect(p.complement_set(a));
    }
    out
}

fn k3(p: &IndexPoset) -> Verdict {
    let w = first_failure(p.len(), |o| {
        if p.complement_set(o).is_empty() {
            return Some(Witness::elements(vec![o], "empty causal complement"));
        }
        let dd = double_complement(p, o);
        let diff = dd.minus(p.down(o)).union(&p.down(o).minus(&dd));
        diff.first().map(|x| Witness::elements(vec![o, x], "double complement differs from the down-set"))
    });
    match w {
        Some(w) => Verdict::fails(w),
        None => Verdict::HoldsRelativeToSample { note: "quantifiers range over the sampled elements".into() },
    }
}

fn k4_pair(p: &IndexPoset, o: usize, a: usize) -> Result<bool, ()> {
    let shared = p.complement_set(o).intersects(p.complement_set(a));
    if p.perp(o, a) {
        return if shared { Ok(true) } else { Err(()) };
    }
    if p.properly_below(o).iter().any(|h| p.complement_set(h).intersects(p.complement_set(a))) {
        return Ok(true);
    }
    // o is minimal in the sample: accept o itself as the smaller element
    if p.properly_below(o).is_empty() && shared {
        return Ok(false);
    }
    Err(())
}

fn k4(p: &IndexPoset) -> Verdict {
    let n = p.len();
    let results: Vec<(Option<Witness>, usize)> = (0..n)
        .into_par_iter()
        .map(|o| {
            let mut relative = 0;
            for a in 0..n {
                match k4_pair(p, o, a) {
                    Ok(true) => {}
                    Ok(false) => relative += 1,
                    Err(()) => {
                        let what = if p.perp(o, a) {
                            "disjoint pair with no common disjoint element"
                        } else {
                            "no smaller element shares a disjoint element"
                        };
                        return (Some(Witness::elements(vec![o, a], what)), relative);
                    }
                }
            }
            (None, relative)
        })
        .collect();
    let relative: usize = results.iter().map(|r| r.1).sum();
    if let Some(w) = results.into_iter().find_map(|r| r.0) {
        return Verdict::fails(w);
    }
    if relative == 0 {
        Verdict::Holds
    } else {
        Verdict::HoldsRelativeToSample {
            note: format!("{relative} pairs use a minimal element in place of a smaller one"),
        }
    }
}

fn k6(p: &IndexPoset) -> Verdict {
    let all = BitSet::full(p.len());
    let comps = p.components_within(&all);
    if comps.len() > 1 {
        return Verdict::fails(Witness::elements(vec![comps[0][0], comps[1][0]], "the poset is not pathwise connected"));
    }
    let w = first_failure(p.len(), |o| {
        let comps = p.components_within(p.complement_set(o));
        (comps.len() > 1).then(|| {
            Witness::elements(vec![o, comps[0][0], comps[1][0]], "causal complement splits into several components")
        })
    });
    match w {
        Some(w) => Verdict::fails(w),
        None => Verdict::Holds,
    }
}

fn k7(p: &IndexPoset, budget: Budget) -> Verdict {
    let comps = p.components_within(&BitSet::full(p.len()));
    if comps.len() > 1 {
        return Verdict::fails(Witness::elements(vec![comps[0][0], comps[1][0]], "the poset is not pathwise connected"));
    }
    match pi1_trivial(p, 0, budget) {
        Pi1Verdict::Trivial { .. } => Verdict::Holds,
        Pi1Verdict::Nontrivial { cycle, reason } => Verdict::fails(Witness {
            elements: vec![],
            symmetry: None,
            cycle: Some(cycle),
            detail: reason,
        }),
        Pi1Verdict::Unknown { reason } => Verdict::Unknown { reason },
    }
}

pub fn check_axioms(p: &IndexPoset, budget: Budget) -> AxiomReport {
    let k2 = match k2_violation(p) {
        Some(w) => Verdict::fails(Witness::elements(w, "smaller element is not disjoint")),
        None => Verdict::Holds,
    };
    let k5 = match k5_violation(p) {
        Some((g, w)) => Verdict::fails(Witness {
            elements: w,
            symmetry: Some(g),
            cycle: None,
            detail: "relation not preserved".into(),
        }),
        None => Verdict::Holds,
    };
    AxiomReport { k1: k1(p), k2, k3: k3(p), k4: k4(p), k5, k6: k6(p), k7: k7(p, budget) }
}

fn connected_in(p: &IndexPoset, set: &BitSet, a: usize, b: usize) -> bool {
    // plain breadth-first search over "share an upper bound in set"
    let mut seen = BitSet::new(p.len());
    let mut queue = vec![a];
    seen.insert(a);
    while let Some(x) = queue.pop() {
        if x == b {
            return true;
        }
        for c in p.up(x).intersect(set).iter() {
            for y in p.down(c).intersect(set).iter() {
                if !seen.contains(y) {
                    seen.insert(y);
                    queue.push(y);
                }
            }
        }
    }
    false
}

/// Re-evaluates the defining formula of axiom `k` (1..=7) on a witness; `true` confirms failure.
pub fn recheck(p: &IndexPoset, k: u8, w: &Witness) -> bool {
    let e = &w.elements;
    match k {
        1 => p.properly_below(e[0]).is_empty() && p.properly_above(e[0]).is_empty(),
        2 => p.perp(e[0], e[1]) && p.leq(e[2], e[0]) && !p.perp(e[2], e[1]),
        3 => {
            if e.len() == 1 {
                return p.complement_set(e[0]).is_empty();
            }
            double_complement(p, e[0]).contains(e[1]) != p.leq(e[1], e[0])
        }
        4 => {
            let (o, a) = (e[0], e[1]);
            let shared = p.complement_set(o).intersects(p.complement_set(a));
            if p.perp(o, a) {
                !shared
            } else {
                p.properly_below(o).iter().all(|h| !p.complement_set(h).intersects(p.complement_set(a)))
                    && !(p.properly_below(o).is_empty() && shared)
            }
        }
        5 => {
            let g = w.symmetry.expect("K5 witnesses name a symmetry");
            let (a, o) = (e[0], e[1]);
            let (ga, go) = (p.act(g, a), p.act(g, o));
            (p.lt(a, o) && !p.lt(ga, go)) || (p.perp(a, o) && !p.perp(ga, go))
        }
        6 => {
            if e.len() == 2 {
                return !connected_in(p, &BitSet::full(p.len()), e[0], e[1]);
            }
            let set = p.complement_set(e[0]);
            set.contains(e[1]) && set.contains(e[2]) && !connected_in(p, set, e[1], e[2])
        }
        7 => match &w.cycle {
            Some(cycle) => super::fundamental::cycle_is_nontrivial(p, cycle),
            None => e.len() == 2 && !connected_in(p, &BitSet::full(p.len()), e[0], e[1]),
        },
        _ => false,
    }
}
