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

//! First homology and fundamental group of the canonical 2-complex.
//!
//! A spanning tree turns the remaining edges into generators and the 2-cells into relators. The
//! presentation is shortened by Tietze eliminations before abelianising or enumerating cosets.

use super::axioms::Budget;
use super::coset::{enumerate, inverse_letter, CosetTable, Enumeration};
use super::complex::{Step, SupportPolicy, TwoComplex};
use super::smith::{AbelianReduction, SparseRow};
use super::{IndexPoset, PosetError};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use std::collections::{BTreeSet, HashMap, VecDeque};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H1Invariants {
    pub rank: usize,
    /// Smith diagonal entries above one, each dividing the next.
    pub torsion: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Pi1Verdict {
    Trivial { cosets_defined: usize },
    /// `cycle` is a closed path of `[from, to, support]` 1-simplices.
    Nontrivial { cycle: Vec<[usize; 3]>, reason: String },
    Unknown { reason: String },
}

/// Generators and relators of the fundamental group at a basepoint.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub basepoint: usize,
    /// Edge index of each generator.
    pub generator_edges: Vec<usize>,
    pub relators: Vec<Vec<usize>>,
    edge_generator: Vec<Option<usize>>,
    /// Oriented tree edge entering each reached vertex.
    parent: Vec<Option<Step>>,
    reached: Vec<bool>,
}

pub fn free_reduce(word: &mut Vec<usize>) {
    let mut out: Vec<usize> = Vec::with_capacity(word.len());
    for &x in word.iter() {
        if out.last() == Some(&inverse_letter(x)) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    let (mut i, mut j) = (0, out.len());
    while j > i + 1 && out[i] == inverse_letter(out[j - 1]) {
        i += 1;
        j -= 1;
    }
    *word = out[i..j].to_vec();
}

fn invert(word: &[usize]) -> Vec<usize> {
    word.iter().rev().map(|x| inverse_letter(*x)).collect()
}

impl Presentation {
    pub fn build(cx: &TwoComplex, basepoint: usize) -> Self {
        let n = cx.vertices;
        let mut adj: Vec<Vec<Step>> = vec![Vec::new(); n];
        for (i, e) in cx.edges.iter().enumerate() {
            adj[e.a].push((i, true));
            adj[e.b].push((i, false));
        }
        let mut parent = vec![None; n];
        let mut reached = vec![false; n];
        let mut tree = vec![false; cx.edges.len()];
        let mut queue = VecDeque::from([basepoint]);
        reached[basepoint] = true;
        while let Some(v) = queue.pop_front() {
            for &s in &adj[v] {
                let w = cx.target(s);
                if !reached[w] {
                    reached[w] = true;
                    parent[w] = Some(s);
                    tree[s.0] = true;
                    queue.push_back(w);
                }
            }
        }
        let mut edge_generator = vec![None; cx.edges.len()];
        let mut generator_edges = Vec::new();
        for (i, e) in cx.edges.iter().enumerate() {
            if reached[e.a] && !tree[i] {
                edge_generator[i] = Some(generator_edges.len());
                generator_edges.push(i);
            }
        }
        let mut me = Self { basepoint, generator_edges, relators: Vec::new(), edge_generator, parent, reached };
        let mut rels = BTreeSet::new();
        for cell in &cx.cells {
            if me.reached[cx.source(cell[0])] {
                let w = me.word(cell);
                if !w.is_empty() {
                    rels.insert(w);
                }
            }
        }
        me.relators = rels.into_iter().collect();
        me
    }

    pub fn generators(&self) -> usize {
        self.generator_edges.len()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.reached[v]
    }

    /// Word of an edge path; tree edges contribute nothing.
    pub fn word(&self, steps: &[Step]) -> Vec<usize> {
        let mut w: Vec<usize> = steps
            .iter()
            .filter_map(|(e, fwd)| self.edge_generator[*e].map(|g| if *fwd { 2 * g } else { 2 * g + 1 }))
            .collect();
        free_reduce(&mut w);
        w
    }

    fn tree_path_from_base(&self, cx: &TwoComplex, mut v: usize) -> Vec<Step> {
        let mut out = Vec::new();
        while let Some(s) = self.parent[v] {
            out.push(s);
            v = cx.source(s);
        }
        out.reverse();
        out
    }

    /// Closed edge path at the basepoint whose word is the single generator `g`.
    pub fn generator_loop(&self, cx: &TwoComplex, g: usize) -> Vec<Step> {
        let e = cx.edges[self.generator_edges[g]];
        let mut path = self.tree_path_from_base(cx, e.a);
        path.push((self.generator_edges[g], true));
        let back = self.tree_path_from_base(cx, e.b);
        path.extend(back.iter().rev().map(|(i, f)| (*i, !f)));
        path
    }
}

fn as_triples(cx: &TwoComplex, steps: &[Step]) -> Vec<[usize; 3]> {
    steps.iter().map(|s| [cx.source(*s), cx.target(*s), cx.edges[s.0].support]).collect()
}

/// A presentation after Tietze eliminations, remembering how eliminated generators are expressed.
#[derive(Clone, Debug)]
pub struct Simplified {
    original: usize,
    /// Index of each surviving original generator in the reduced presentation.
    survivor: Vec<Option<usize>>,
    /// Eliminated generators in elimination order, each with its value in original letters.
    eliminated: Vec<(usize, Vec<usize>)>,
    pub generators: usize,
    pub relators: Vec<Vec<usize>>,
}

const ELIMINATION_LENGTH: usize = 6;

pub fn simplify(generators: usize, relators: &[Vec<usize>]) -> Simplified {
    let mut rels: Vec<Option<Vec<usize>>> = relators
        .iter()
        .map(|r| {
            let mut r = r.clone();
            free_reduce(&mut r);
            (!r.is_empty()).then_some(r)
        })
        .collect();
    let mut occurs: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); generators];
    let mut by_len: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (i, r) in rels.iter().enumerate() {
        if let Some(r) = r {
            for x in r {
                occurs[x / 2].insert(i);
            }
            by_len.insert((r.len(), i));
        }
    }
    let mut alive = vec![true; generators];
    let mut eliminated = Vec::new();
    loop {
        let mut pick = None;
        for &(len, i) in by_len.iter() {
            if len > ELIMINATION_LENGTH {
                break;
            }
            let r = rels[i].as_ref().expect("indexed relators exist");
            let mut count: HashMap<usize, usize> = HashMap::new();
            for x in r {
                *count.entry(x / 2).or_default() += 1;
            }
            if let Some(pos) = r.iter().position(|x| count[&(x / 2)] == 1) {
                pick = Some((i, pos));
                break;
            }
        }
        let Some((i, pos)) = pick else { break };
        let r = rels[i].take().expect("picked relator exists");
        by_len.remove(&(r.len(), i));
        for x in &r {
            occurs[x / 2].remove(&i);
        }
        let mut rotated = r[pos..].to_vec();
        rotated.extend_from_slice(&r[..pos]);
        let x = rotated[0];
        let rest = &rotated[1..];
        let g = x / 2;
        // x · rest = 1
        let value = if x % 2 == 0 { invert(rest) } else { rest.to_vec() };
        let value_inv = invert(&value);
        alive[g] = false;
        for k in std::mem::take(&mut occurs[g]) {
            let old = rels[k].take().expect("occurring relator exists");
            by_len.remove(&(old.len(), k));
            for y in &old {
                if y / 2 != g {
                    occurs[y / 2].remove(&k);
                }
            }
            let mut new = Vec::with_capacity(old.len() + value.len());
            for &y in &old {
                if y == 2 * g {
                    new.extend_from_slice(&value);
                } else if y == 2 * g + 1 {
                    new.extend_from_slice(&value_inv);
                } else {
                    new.push(y);
                }
            }
            free_reduce(&mut new);
            if !new.is_empty() {
                for y in &new {
                    occurs[y / 2].insert(k);
                }
                by_len.insert((new.len(), k));
                rels[k] = Some(new);
            }
        }
        eliminated.push((g, value));
    }
    let mut survivor = vec![None; generators];
    let mut count = 0;
    for g in 0..generators {
        if alive[g] {
            survivor[g] = Some(count);
            count += 1;
        }
    }
    let rename = |r: &Vec<usize>| -> Vec<usize> {
        r.iter().map(|x| 2 * survivor[x / 2].expect("relators use surviving generators") + x % 2).collect()
    };
    let relators: BTreeSet<Vec<usize>> = rels.iter().flatten().map(rename).collect();
    Simplified { original: generators, survivor, eliminated, generators: count, relators: relators.into_iter().collect() }
}

impl Simplified {
    /// Images of the original generators under a map defined on the survivors.
    fn extend<T: Clone>(&self, on_survivors: &[T], combine: impl Fn(&[usize], &[Option<T>]) -> T) -> Vec<T> {
        let mut img: Vec<Option<T>> = vec![None; self.original];
        for g in 0..self.original {
            if let Some(s) = self.survivor[g] {
                img[g] = Some(on_survivors[s].clone());
            }
        }
        for (g, value) in self.eliminated.iter().rev() {
            img[*g] = Some(combine(value, &img));
        }
        img.into_iter().map(|x| x.expect("every generator has an image")).collect()
    }

    /// Exponent-sum vectors of the original generators over the survivors.
    pub fn abelian_images(&self) -> Vec<SparseRow> {
        let units: Vec<SparseRow> = (0..self.generators).map(|s| SparseRow::from([(s, BigInt::from(1))])).collect();
        self.extend(&units, |word, img| {
            let mut v = SparseRow::new();
            for x in word {
                let sign = if x % 2 == 0 { 1 } else { -1 };
                for (c, a) in img[x / 2].as_ref().expect("earlier image") {
                    let e = v.entry(*c).or_insert_with(BigInt::zero);
                    *e += a * sign;
                }
            }
            v.retain(|_, a| !a.is_zero());
            v
        })
    }

    /// Coset permutations of the original generators.
    pub fn permutations(&self, table: &CosetTable) -> Vec<Vec<usize>> {
        let n = table.index();
        let gens: Vec<Vec<usize>> = (0..self.generators).map(|s| (0..n).map(|c| table.rows[c][2 * s]).collect()).collect();
        self.extend(&gens, |word, img| {
            (0..n)
                .map(|c| {
                    word.iter().fold(c, |c, x| {
                        let perm = img[x / 2].as_ref().expect("earlier image");
                        if x % 2 == 0 {
                            perm[c]
                        } else {
                            perm.iter().position(|y| *y == c).expect("permutation")
                        }
                    })
                })
                .collect()
        })
    }

    pub fn abelian_reduction(&self) -> AbelianReduction {
        let rows = self.relators.iter().map(|r| {
            let mut v = SparseRow::new();
            for x in r {
                let e = v.entry(x / 2).or_insert_with(BigInt::zero);
                *e += if x % 2 == 0 { 1 } else { -1 };
            }
            v.retain(|_, a| !a.is_zero());
            v
        });
        AbelianReduction::new(self.generators, rows)
    }
}

fn word_vector(images: &[SparseRow], word: &[usize]) -> SparseRow {
    let mut v = SparseRow::new();
    for x in word {
        for (c, a) in &images[x / 2] {
            let e = v.entry(*c).or_insert_with(BigInt::zero);
            if x % 2 == 0 {
                *e += a;
            } else {
                *e -= a;
            }
        }
    }
    v.retain(|_, a| !a.is_zero());
    v
}

fn word_moves(perms: &[Vec<usize>], word: &[usize]) -> bool {
    let n = perms.first().map_or(1, Vec::len);
    (0..n).any(|c| {
        let d = word.iter().fold(c, |c, x| {
            let perm = &perms[x / 2];
            if x % 2 == 0 {
                perm[c]
            } else {
                perm.iter().position(|y| *y == c).expect("permutation")
            }
        });
        d != c
    })
}

fn invariants_of(red: &AbelianReduction) -> H1Invariants {
    let (rank, torsion) = red.invariants();
    H1Invariants { rank, torsion: torsion.iter().map(|t| t.to_u64().expect("torsion fits in u64")).collect() }
}

/// H1 of each connected component, ordered by smallest element index.
pub fn h1_components(p: &IndexPoset, policy: SupportPolicy) -> Vec<H1Invariants> {
    let cx = TwoComplex::build(p, policy);
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for v in 0..p.len() {
        if seen[v] {
            continue;
        }
        let pres = Presentation::build(&cx, v);
        for (w, s) in seen.iter_mut().enumerate() {
            *s |= pres.contains_vertex(w);
        }
        let simp = simplify(pres.generators(), &pres.relators);
        out.push(invariants_of(&simp.abelian_reduction()));
    }
    out
}

/// Abelian invariants of the first homology of a connected poset.
pub fn h1(p: &IndexPoset) -> Result<H1Invariants, PosetError> {
    h1_with(p, SupportPolicy::default())
}

pub fn h1_with(p: &IndexPoset, policy: SupportPolicy) -> Result<H1Invariants, PosetError> {
    let mut comps = h1_components(p, policy);
    match comps.len() {
        0 => Ok(H1Invariants { rank: 0, torsion: vec![] }),
        1 => Ok(comps.remove(0)),
        k => Err(PosetError::Disconnected(k)),
    }
}

pub fn pi1_trivial(p: &IndexPoset, basepoint: usize, budget: Budget) -> Pi1Verdict {
    pi1_trivial_with(p, basepoint, budget, SupportPolicy::default())
}

pub fn pi1_trivial_with(p: &IndexPoset, basepoint: usize, budget: Budget, policy: SupportPolicy) -> Pi1Verdict {
    if basepoint >= p.len() {
        return Pi1Verdict::Unknown { reason: format!("basepoint {basepoint} is not an element") };
    }
    let cx = TwoComplex::build(p, policy);
    let pres = Presentation::build(&cx, basepoint);
    let simp = simplify(pres.generators(), &pres.relators);
    if simp.generators == 0 {
        return Pi1Verdict::Trivial { cosets_defined: 1 };
    }
    let red = simp.abelian_reduction();
    let images = simp.abelian_images();
    for (g, v) in images.iter().enumerate() {
        if !red.in_rational_span(v) {
            return Pi1Verdict::Nontrivial {
                cycle: as_triples(&cx, &pres.generator_loop(&cx, g)),
                reason: "loop has infinite order in the abelianisation".into(),
            };
        }
    }
    match enumerate(simp.generators, &simp.relators, budget.coset_rows) {
        Enumeration::Complete(table) if table.index() == 1 => Pi1Verdict::Trivial { cosets_defined: 1 },
        Enumeration::Complete(table) => {
            let perms = simp.permutations(&table);
            let g = (0..perms.len()).find(|g| perms[*g][0] != 0).expect("some generator moves the base coset");
            Pi1Verdict::Nontrivial {
                cycle: as_triples(&cx, &pres.generator_loop(&cx, g)),
                reason: format!("loop acts nontrivially on {} cosets", table.index()),
            }
        }
        Enumeration::BudgetExhausted { defined } => Pi1Verdict::Unknown {
            reason: format!(
                "coset enumeration exceeded {defined} rows with {} generators and {} relators",
                simp.generators,
                simp.relators.len()
            ),
        },
    }
}

/// Independent check that a closed path of 1-simplices is not null-homotopic: either its class in
/// the abelianisation has infinite order, or it acts nontrivially in a verified coset
/// representation.
pub fn cycle_is_nontrivial(p: &IndexPoset, cycle: &[[usize; 3]]) -> bool {
    if cycle.is_empty() {
        return false;
    }
    for (i, [from, to, support]) in cycle.iter().enumerate() {
        if *support >= p.len() || !p.leq(*from, *support) || !p.leq(*to, *support) {
            return false;
        }
        if cycle[(i + 1) % cycle.len()][0] != *to {
            return false;
        }
    }
    let cx = TwoComplex::build(p, SupportPolicy::default());
    let pres = Presentation::build(&cx, cycle[0][0]);
    let steps: Vec<Step> = cycle.iter().flat_map(|[f, t, s]| cx.steps_for(*f, *t, *s)).collect();
    let word = pres.word(&steps);
    if word.is_empty() {
        return false;
    }
    let simp = simplify(pres.generators(), &pres.relators);
    let red = simp.abelian_reduction();
    if !red.in_rational_span(&word_vector(&simp.abelian_images(), &word)) {
        return true;
    }
    match enumerate(simp.generators, &simp.relators, Budget::default().coset_rows) {
        Enumeration::Complete(table) => {
            table.is_representation(&simp.relators) && word_moves(&simp.permutations(&table), &word)
        }
        Enumeration::BudgetExhausted { .. } => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::BitSet;

    fn from_down_sets(down: &[&[usize]]) -> IndexPoset {
        let n = down.len();
        let mut leq = vec![BitSet::new(n); n];
        let mut lt = vec![BitSet::new(n); n];
        for (i, row) in down.iter().enumerate() {
            leq[i].insert(i);
            for j in row.iter() {
                leq[i].insert(*j);
                lt[i].insert(*j);
            }
        }
        let ids = (0..n).map(|i| format!("e{i:02}")).collect();
        IndexPoset::from_relations(ids, leq, lt, vec![BitSet::new(n); n], vec!["g00".into()], vec![(0..n).collect()], vec![vec![0]])
            .unwrap()
    }

    /// Four points and four arcs joining neighbours: a circle.
    fn circle() -> IndexPoset {
        from_down_sets(&[&[], &[], &[], &[], &[0, 1], &[1, 2], &[2, 3], &[3, 0]])
    }

    #[test]
    fn circle_has_infinite_cyclic_h1() {
        assert_eq!(h1(&circle()).unwrap(), H1Invariants { rank: 1, torsion: vec![] });
    }

    #[test]
    fn circle_loop_is_certified() {
        let p = circle();
        match pi1_trivial(&p, 0, Budget::default()) {
            Pi1Verdict::Nontrivial { cycle, .. } => assert!(cycle_is_nontrivial(&p, &cycle)),
            other => panic!("{other:?}"),
        }
        // going around the circle through arc supports
        let around = [[0, 1, 4], [1, 2, 5], [2, 3, 6], [3, 0, 7]];
        assert!(cycle_is_nontrivial(&p, &around));
        let back_and_forth = [[0, 1, 4], [1, 0, 4]];
        assert!(!cycle_is_nontrivial(&p, &back_and_forth));
    }

    #[test]
    fn cone_point_is_contractible() {
        // the circle plus a top element above everything
        let p = from_down_sets(&[&[], &[], &[], &[], &[0, 1], &[1, 2], &[2, 3], &[3, 0], &[0, 1, 2, 3, 4, 5, 6, 7]]);
        assert_eq!(h1(&p).unwrap(), H1Invariants { rank: 0, torsion: vec![] });
        assert_eq!(pi1_trivial(&p, 0, Budget::default()), Pi1Verdict::Trivial { cosets_defined: 1 });
    }

    #[test]
    fn disconnected_poset_reports_components() {
        let p = from_down_sets(&[&[], &[], &[0]]);
        assert_eq!(h1(&p), Err(PosetError::Disconnected(2)));
        assert_eq!(h1_components(&p, SupportPolicy::default()).len(), 2);
    }

    #[test]
    fn projective_plane_has_two_torsion() {
        // minimal finite model of the real projective plane: face poset of a 2-cell complex
        // built from the 6-vertex triangulation
        let faces: [[usize; 3]; 10] = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
            [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
        ];
        let mut edges: Vec<[usize; 2]> = Vec::new();
        for f in &faces {
            for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[0], f[2])] {
                let e = [a.min(b), a.max(b)];
                if !edges.contains(&e) {
                    edges.push(e);
                }
            }
        }
        let mut down: Vec<Vec<usize>> = vec![vec![]; 6];
        for e in &edges {
            down.push(e.to_vec());
        }
        for f in &faces {
            let mut d = f.to_vec();
            for (k, e) in edges.iter().enumerate() {
                if f.contains(&e[0]) && f.contains(&e[1]) {
                    d.push(6 + k);
                }
            }
            down.push(d);
        }
        let rows: Vec<&[usize]> = down.iter().map(Vec::as_slice).collect();
        let p = from_down_sets(&rows);
        assert_eq!(h1(&p).unwrap(), H1Invariants { rank: 0, torsion: vec![2] });
        match pi1_trivial(&p, 0, Budget::default()) {
            Pi1Verdict::Nontrivial { cycle, reason } => {
                assert!(reason.contains("2 cosets"), "{reason}");
                assert!(cycle_is_nontrivial(&p, &cycle));
            }
            other => panic!("{other:?}"),
        }
    }
}
