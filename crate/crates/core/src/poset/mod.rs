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

//! Finite index posets: order, proper order and causal disjointness as relation matrices, with a
//! finite symmetry group acting by element permutations.

pub mod axioms;
pub mod complex;
pub mod coset;
pub mod fundamental;
pub mod smith;

pub use axioms::{check_axioms, AxiomReport, Budget, Verdict, Witness};
pub use complex::{SupportPolicy, TwoComplex};
pub use fundamental::{h1, pi1_trivial, H1Invariants, Pi1Verdict};

use crate::bits::BitSet;
use crate::regions::symmetry::multiplication_table;
use crate::regions::{RegionError, RegionFamily, RegionModel};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("invariant violated: {what} at {witness:?}")]
    InvariantViolation { what: String, witness: Vec<String> },
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("the poset is not pathwise connected ({0} components)")]
    Disconnected(usize),
    #[error(transparent)]
    Region(#[from] RegionError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexPoset {
    pub ids: Vec<String>,
    pub labels: Vec<String>,
    leq: Vec<BitSet>,
    geq: Vec<BitSet>,
    lt: Vec<BitSet>,
    gt: Vec<BitSet>,
    perp: Vec<BitSet>,
    /// Symmetry ids, identity first.
    pub group: Vec<String>,
    /// `action[g][i]` is the index of `g · i`.
    pub action: Vec<Vec<usize>>,
    /// `table[g][h]` is the index of `g ∘ h`.
    pub table: Vec<Vec<usize>>,
    pub inverse: Vec<usize>,
}

fn violation(what: &str, ids: &[String], idx: &[usize]) -> PosetError {
    PosetError::InvariantViolation {
        what: what.to_string(),
        witness: idx.iter().map(|i| ids[*i].clone()).collect(),
    }
}

impl IndexPoset {
    /// Assembles a poset from explicit relations. Row `i` of `leq` lists the elements `j ⊆ i`,
    /// row `i` of `lt` the elements `j ⊂ i`. Checks that `leq` is a partial order, that `lt`
    /// sits inside `leq` off the diagonal, that `perp` is symmetric and irreflexive, and that
    /// the action is a homomorphism into element permutations. Compatibility of `perp` with the
    /// order and with the action is left to [`check_axioms`].
    pub fn from_relations(
        ids: Vec<String>,
        leq: Vec<BitSet>,
        lt: Vec<BitSet>,
        perp: Vec<BitSet>,
        group: Vec<String>,
        action: Vec<Vec<usize>>,
        table: Vec<Vec<usize>>,
    ) -> Result<Self, PosetError> {
        let n = ids.len();
        if leq.len() != n || lt.len() != n || perp.len() != n {
            return Err(PosetError::InvariantViolation { what: "relation sizes differ".into(), witness: vec![] });
        }
        for i in 0..n {
            if !leq[i].contains(i) {
                return Err(violation("leq is not reflexive", &ids, &[i]));
            }
            if lt[i].contains(i) || !lt[i].is_subset(&leq[i]) {
                return Err(violation("lt is not inside leq minus the diagonal", &ids, &[i]));
            }
            if perp[i].contains(i) {
                return Err(violation("perp is reflexive", &ids, &[i]));
            }
            for j in leq[i].iter() {
                if j != i && leq[j].contains(i) {
                    return Err(violation("leq is not antisymmetric", &ids, &[i, j]));
                }
                if !leq[j].is_subset(&leq[i]) {
                    let k = leq[j].minus(&leq[i]).first().expect("nonempty difference");
                    return Err(violation("leq is not transitive", &ids, &[k, j, i]));
                }
            }
            for j in perp[i].iter() {
                if !perp[j].contains(i) {
                    return Err(violation("perp is not symmetric", &ids, &[i, j]));
                }
            }
        }
        let g = group.len();
        if action.len() != g || table.len() != g || g == 0 {
            return Err(PosetError::InvariantViolation { what: "group data has inconsistent sizes".into(), witness: vec![] });
        }
        for (gi, perm) in action.iter().enumerate() {
            let mut seen = vec![false; n];
            for &j in perm {
                if j >= n || seen[j] {
                    return Err(PosetError::InvariantViolation {
                        what: "group element does not act by a permutation".into(),
                        witness: vec![group[gi].clone()],
                    });
                }
                seen[j] = true;
            }
        }
        if action[0].iter().enumerate().any(|(i, j)| i != *j) {
            return Err(PosetError::InvariantViolation { what: "first group element is not the identity".into(), witness: vec![] });
        }
        for a in 0..g {
            for b in 0..g {
                let c = table[a][b];
                if (0..n).any(|i| action[c][i] != action[a][action[b][i]]) {
                    return Err(PosetError::InvariantViolation {
                        what: "action is not a homomorphism".into(),
                        witness: vec![group[a].clone(), group[b].clone()],
                    });
                }
            }
        }
        let inverse = (0..g)
            .map(|a| (0..g).find(|b| table[a][*b] == 0).expect("group elements have inverses"))
            .collect();
        let transpose = |rows: &[BitSet]| {
            let mut t = vec![BitSet::new(n); n];
            for (i, row) in rows.iter().enumerate() {
                for j in row.iter() {
                    t[j].insert(i);
                }
            }
            t
        };
        let geq = transpose(&leq);
        let gt = transpose(&lt);
        Ok(Self { labels: ids.clone(), ids, leq, geq, lt, gt, perp, group, action, table, inverse })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Result<usize, PosetError> {
        self.ids.iter().position(|x| x == id).ok_or_else(|| PosetError::UnknownElement(id.to_string()))
    }

    /// `a ⊆ b`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.geq[a].contains(b)
    }

    /// `a ⊂ b`.
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.lt[b].contains(a)
    }

    pub fn perp(&self, a: usize, b: usize) -> bool {
        self.perp[a].contains(b)
    }

    /// Elements above `a` (including `a`).
    pub fn up(&self, a: usize) -> &BitSet {
        &self.geq[a]
    }

    /// Elements below `a` (including `a`).
    pub fn down(&self, a: usize) -> &BitSet {
        &self.leq[a]
    }

    /// Elements `b` with `a ⊂ b`.
    pub fn properly_above(&self, a: usize) -> &BitSet {
        &self.gt[a]
    }

    /// Elements `b` with `b ⊂ a`.
    pub fn properly_below(&self, a: usize) -> &BitSet {
        &self.lt[a]
    }

    pub fn complement_set(&self, a: usize) -> &BitSet {
        &self.perp[a]
    }

    pub fn act(&self, g: usize, a: usize) -> usize {
        self.action[g][a]
    }

    pub fn group_len(&self) -> usize {
        self.group.len()
    }

    /// Common upper bounds of `a` and `b`.
    pub fn upper_bounds(&self, a: usize, b: usize) -> BitSet {
        self.geq[a].intersect(&self.geq[b])
    }

    /// Minimal elements of `set` for `⊆`, increasing.
    pub fn minimal_in(&self, set: &BitSet) -> Vec<usize> {
        set.iter()
            .filter(|&c| {
                // c is minimal if nothing else in the set lies below it
                let below = self.leq[c].intersect(set);
                below.count() == 1
            })
            .collect()
    }

    /// Connected components of `set` under the relation "share an upper bound inside `set`".
    pub fn components_within(&self, set: &BitSet) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for c in set.iter() {
            let below = self.leq[c].intersect(set);
            for a in below.iter() {
                let (ra, rc) = (find(&mut parent, a), find(&mut parent, c));
                if ra != rc {
                    let (lo, hi) = if ra < rc { (ra, rc) } else { (rc, ra) };
                    parent[hi] = lo;
                }
            }
        }
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut root_slot: Vec<Option<usize>> = vec![None; n];
        for a in set.iter() {
            let r = find(&mut parent, a);
            match root_slot[r] {
                Some(k) => comps[k].push(a),
                None => {
                    root_slot[r] = Some(comps.len());
                    comps.push(vec![a]);
                }
            }
        }
        comps
    }

    pub fn to_json(&self) -> Value {
        json!({
            "elements": self.ids,
            "leq": self.leq.iter().map(BitSet::to_bit_string).collect::<Vec<_>>(),
            "perp": self.perp.iter().map(BitSet::to_bit_string).collect::<Vec<_>>(),
            "group": self.action,
        })
    }
}

/// Builds the poset of a region family, verifying order compatibility of disjointness and
/// invariance of all relations under the symmetry action.
pub fn build_poset<R: RegionModel>(family: &RegionFamily<R>) -> Result<IndexPoset, PosetError> {
    let n = family.len();
    let mut leq = vec![BitSet::new(n); n];
    let mut lt = vec![BitSet::new(n); n];
    let mut perp = vec![BitSet::new(n); n];
    for (i, a) in family.regions.iter().enumerate() {
        for (j, b) in family.regions.iter().enumerate() {
            if b.subset_of(a)? {
                leq[i].insert(j);
            }
            if b.proper_subset_of(a)? {
                lt[i].insert(j);
            }
            if i != j && a.disjoint_from(b)? {
                perp[i].insert(j);
            }
        }
    }
    let action = family.action_table()?;
    let table = multiplication_table(&family.symmetries).ok_or_else(|| PosetError::InvariantViolation {
        what: "symmetries do not form a group".into(),
        witness: vec![],
    })?;
    let group = family.symmetries.iter().map(|s| s.id.clone()).collect();
    let mut p = IndexPoset::from_relations(family.ids.clone(), leq, lt, perp, group, action, table)?;
    p.labels = family.regions.iter().map(RegionModel::label).collect();
    if let Some(w) = axioms::k2_violation(&p) {
        return Err(violation("disjointness is not inherited by smaller elements", &p.ids, &w));
    }
    if let Some((g, w)) = axioms::k5_violation(&p) {
        let mut ids: Vec<String> = vec![p.group[g].clone()];
        ids.extend(w.iter().map(|i| p.ids[*i].clone()));
        return Err(PosetError::InvariantViolation { what: "symmetry does not preserve the relations".into(), witness: ids });
    }
    Ok(p)
}

/// Convenience: `o^⊥` as a list of element indices.
pub fn causal_complement(p: &IndexPoset, o: usize) -> Result<Vec<usize>, PosetError> {
    if o >= p.len() {
        return Err(PosetError::UnknownElement(o.to_string()));
    }
    Ok(p.complement_set(o).iter().collect())
}
