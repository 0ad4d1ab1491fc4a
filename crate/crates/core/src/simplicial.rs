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

//! Singular simplices over an index poset, paths of 1-simplices and their elementary deformations.
//!
//! A 1-simplex `b` runs from `∂₁b` to `∂₀b`. A 2-simplex `c` relates the path `∂₀c * ∂₂c` (first
//! `∂₂c`, then `∂₀c`) to the single 1-simplex `∂₁c`.

use crate::poset::{IndexPoset, SupportPolicy, TwoComplex};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::collections::HashMap;
use thiserror::Error;

pub const MAX_DIMENSION: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("path endpoints do not match")]
    EndpointMismatch,
    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),
    #[error("dimension above {MAX_DIMENSION}")]
    DimensionTooHigh,
    #[error("unknown symmetry {0}")]
    UnknownSymmetry(usize),
    #[error("move {index} does not apply: {reason}")]
    BadMove { index: usize, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    support: usize,
    faces: Vec<Simplex>,
}

impl Simplex {
    /// The 0-simplex of a poset element.
    pub fn point(a: usize) -> Self {
        Self { support: a, faces: Vec::new() }
    }

    /// Checked construction from faces; verifies supports and the simplicial identities.
    pub fn new(p: &IndexPoset, support: usize, faces: Vec<Simplex>) -> Result<Self, SimplicialError> {
        if support >= p.len() {
            return Err(SimplicialError::InvalidSimplex(format!("support {support} is not an element")));
        }
        if faces.len() == 1 || faces.len() > MAX_DIMENSION + 1 {
            return Err(if faces.len() == 1 {
                SimplicialError::InvalidSimplex("a simplex has zero or at least two faces".into())
            } else {
                SimplicialError::DimensionTooHigh
            });
        }
        if faces.is_empty() {
            return Ok(Self::point(support));
        }
        let n = faces.len() - 1;
        for f in &faces {
            if f.dim() + 1 != n {
                return Err(SimplicialError::InvalidSimplex("faces have the wrong dimension".into()));
            }
            if !p.leq(f.support, support) {
                return Err(SimplicialError::InvalidSimplex(format!(
                    "face support {} is not inside {}",
                    p.ids[f.support], p.ids[support]
                )));
            }
        }
        let x = Self { support, faces };
        if n >= 2 {
            for i in 0..n {
                for j in 0..=i {
                    if x.faces[j].faces[i] != x.faces[i + 1].faces[j] {
                        return Err(SimplicialError::InvalidSimplex(format!("face identity fails for i={i}, j={j}")));
                    }
                }
            }
        }
        Ok(x)
    }

    /// The 1-simplex `from -> to` with the given support.
    pub fn edge(p: &IndexPoset, from: usize, to: usize, support: usize) -> Result<Self, SimplicialError> {
        Self::new(p, support, vec![Self::point(to), Self::point(from)])
    }

    /// The 2-simplex with `∂₂ = v0 -> v1`, `∂₀ = v1 -> v2` and `∂₁ = v0 -> v2`.
    pub fn triangle(p: &IndexPoset, d0: Simplex, d1: Simplex, d2: Simplex, support: usize) -> Result<Self, SimplicialError> {
        Self::new(p, support, vec![d0, d1, d2])
    }

    pub fn dim(&self) -> usize {
        self.faces.len().saturating_sub(1)
    }

    pub fn support(&self) -> usize {
        self.support
    }

    pub fn faces(&self) -> &[Simplex] {
        &self.faces
    }

    pub fn face(&self, i: usize) -> Result<&Simplex, SimplicialError> {
        if self.faces.is_empty() {
            return Err(SimplicialError::IndexOutOfRange { index: i, dim: 0 });
        }
        self.faces.get(i).ok_or(SimplicialError::IndexOutOfRange { index: i, dim: self.dim() })
    }

    /// `σᵢ`: the simplex one dimension up obtained by repeating vertex `i`, with the same support.
    pub fn degeneracy(&self, i: usize) -> Result<Simplex, SimplicialError> {
        let n = self.dim();
        if i > n {
            return Err(SimplicialError::IndexOutOfRange { index: i, dim: n });
        }
        if n + 1 > MAX_DIMENSION {
            return Err(SimplicialError::DimensionTooHigh);
        }
        Ok(self.degenerate(i))
    }

    fn degenerate(&self, j: usize) -> Simplex {
        let n = self.dim();
        let faces = (0..=n + 1)
            .map(|i| {
                if i == j || i == j + 1 {
                    self.clone()
                } else if i < j {
                    self.faces[i].degenerate(j - 1)
                } else {
                    self.faces[i - 1].degenerate(j)
                }
            })
            .collect();
        Simplex { support: self.support, faces }
    }

    /// Whether the simplex is in the image of some degeneracy map.
    pub fn is_degenerate(&self) -> bool {
        let n = self.dim();
        n > 0 && (0..n).any(|j| self.faces[j] == self.faces[j + 1] && self.faces[j].degenerate(j) == *self)
    }

    /// Vertices `v0..vn`, read off from the faces.
    pub fn vertices(&self) -> Vec<usize> {
        match self.dim() {
            0 if self.faces.is_empty() => vec![self.support],
            _ => {
                // v0 is the first vertex of the last face, the rest come from face 0
                let last = self.faces.last().expect("positive dimension").vertices();
                let mut v = vec![last[0]];
                v.extend(self.faces[0].vertices());
                v
            }
        }
    }

    pub fn act(&self, p: &IndexPoset, g: usize) -> Result<Simplex, SimplicialError> {
        if g >= p.group_len() {
            return Err(SimplicialError::UnknownSymmetry(g));
        }
        Ok(self.act_unchecked(p, g))
    }

    fn act_unchecked(&self, p: &IndexPoset, g: usize) -> Simplex {
        Simplex { support: p.act(g, self.support), faces: self.faces.iter().map(|f| f.act_unchecked(p, g)).collect() }
    }

    /// Start `∂₁b` of a 1-simplex.
    pub fn from(&self) -> usize {
        self.faces[1].support
    }

    /// End `∂₀b` of a 1-simplex.
    pub fn to(&self) -> usize {
        self.faces[0].support
    }

    /// A 1-simplex with its faces swapped.
    pub fn reversed(&self) -> Simplex {
        Simplex { support: self.support, faces: vec![self.faces[1].clone(), self.faces[0].clone()] }
    }

    fn edge_unchecked(from: usize, to: usize, support: usize) -> Self {
        Simplex { support, faces: vec![Self::point(to), Self::point(from)] }
    }
}

/// A chain of 1-simplices `b₁, …, bₙ` with `∂₀bᵢ₋₁ = ∂₁bᵢ`. The empty path at `a` stands for the
/// degenerate 1-simplex at `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    start: usize,
    steps: Vec<Simplex>,
}

impl Path {
    pub fn trivial(a: usize) -> Self {
        Self { start: a, steps: Vec::new() }
    }

    pub fn new(steps: Vec<Simplex>) -> Result<Self, SimplicialError> {
        let first = steps.first().ok_or(SimplicialError::EndpointMismatch)?;
        if steps.iter().any(|b| b.dim() != 1 || b.faces.len() != 2) {
            return Err(SimplicialError::InvalidSimplex("paths consist of 1-simplices".into()));
        }
        if steps.windows(2).any(|w| w[0].to() != w[1].from()) {
            return Err(SimplicialError::EndpointMismatch);
        }
        Ok(Self { start: first.from(), steps })
    }

    /// Path from `[from, to, support]` triples.
    pub fn from_triples(p: &IndexPoset, triples: &[[usize; 3]]) -> Result<Self, SimplicialError> {
        let steps = triples.iter().map(|[f, t, s]| Simplex::edge(p, *f, *t, *s)).collect::<Result<Vec<_>, _>>()?;
        Self::new(steps)
    }

    pub fn steps(&self) -> &[Simplex] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.steps.last().map_or(self.start, Simplex::to)
    }

    /// Vertex before step `i`; `vertex(len)` is the end.
    pub fn vertex(&self, i: usize) -> usize {
        if i == 0 {
            self.start
        } else {
            self.steps[i - 1].to()
        }
    }

    pub fn reverse(&self) -> Path {
        Path { start: self.end(), steps: self.steps.iter().rev().map(Simplex::reversed).collect() }
    }

    /// `q * p`: first `p`, then `q`.
    pub fn compose(q: &Path, p: &Path) -> Result<Path, SimplicialError> {
        if p.end() != q.start {
            return Err(SimplicialError::EndpointMismatch);
        }
        let mut steps = p.steps.clone();
        steps.extend(q.steps.iter().cloned());
        Ok(Path { start: p.start, steps })
    }

    pub fn act(&self, p: &IndexPoset, g: usize) -> Result<Path, SimplicialError> {
        if g >= p.group_len() {
            return Err(SimplicialError::UnknownSymmetry(g));
        }
        Ok(Path { start: p.act(g, self.start), steps: self.steps.iter().map(|b| b.act_unchecked(p, g)).collect() })
    }

    pub fn triples(&self) -> Vec<[usize; 3]> {
        self.steps.iter().map(|b| [b.from(), b.to(), b.support]).collect()
    }

    /// JSON list of `[start id, end id, support id]` per 1-simplex.
    pub fn to_json(&self, p: &IndexPoset) -> Value {
        json!(self.steps.iter().map(|b| json!([p.ids[b.from()], p.ids[b.to()], p.ids[b.support]])).collect::<Vec<_>>())
    }
}

/// One elementary deformation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    /// Replace step `at` by the two given steps.
    Expand { at: usize, first: Simplex, second: Simplex },
    /// Replace steps `at`, `at + 1` by the given step.
    Contract { at: usize, result: Simplex },
    /// Insert the degenerate 1-simplex at vertex `at`.
    InsertDegenerate { at: usize },
    /// Remove the degenerate step `at`.
    RemoveDegenerate { at: usize },
}

/// Canonical 1-simplices: one support per pair, taken from the canonical 2-complex.
#[derive(Clone, Debug)]
pub struct Canonical {
    support: HashMap<(usize, usize), usize>,
    neighbours: Vec<Vec<usize>>,
}

impl Canonical {
    pub fn new(p: &IndexPoset) -> Self {
        let cx = TwoComplex::build(p, SupportPolicy::LexMinimal);
        let mut support = HashMap::new();
        let mut neighbours = vec![Vec::new(); p.len()];
        for e in &cx.edges {
            support.insert((e.a, e.b), e.support);
            support.insert((e.b, e.a), e.support);
            neighbours[e.a].push(e.b);
            neighbours[e.b].push(e.a);
        }
        for n in neighbours.iter_mut() {
            n.sort_unstable();
        }
        Self { support, neighbours }
    }

    /// The canonical 1-simplex `from -> to`; degenerate when the endpoints agree.
    pub fn edge(&self, from: usize, to: usize) -> Option<Simplex> {
        if from == to {
            return Some(Simplex::point(from).degenerate(0));
        }
        self.support.get(&(from, to)).map(|s| Simplex::edge_unchecked(from, to, *s))
    }

    pub fn neighbours(&self, a: usize) -> &[usize] {
        &self.neighbours[a]
    }
}

fn has_common_upper_bound(p: &IndexPoset, supports: &[usize]) -> bool {
    let mut ub = p.up(supports[0]).clone();
    for s in &supports[1..] {
        ub = ub.intersect(p.up(*s));
    }
    !ub.is_empty()
}

fn is_degenerate_edge(b: &Simplex) -> bool {
    b.from() == b.to() && b.support == b.from()
}

impl Path {
    /// Applies one move, checking that it is an elementary deformation.
    pub fn apply(&self, p: &IndexPoset, m: &Move) -> Result<Path, SimplicialError> {
        let bad = |reason: &str| SimplicialError::BadMove { index: 0, reason: reason.to_string() };
        let mut steps = self.steps.clone();
        match m {
            Move::Expand { at, first, second } => {
                let b = steps.get(*at).ok_or_else(|| bad("position out of range"))?;
                if first.from() != b.from() || second.to() != b.to() || first.to() != second.from() {
                    return Err(bad("expansion does not bound a 2-simplex"));
                }
                for e in [first, second] {
                    Simplex::edge(p, e.from(), e.to(), e.support)?;
                }
                if !has_common_upper_bound(p, &[b.support, first.support, second.support]) {
                    return Err(bad("no common support"));
                }
                steps.splice(*at..=*at, [first.clone(), second.clone()]);
            }
            Move::Contract { at, result } => {
                if *at + 1 >= steps.len() {
                    return Err(bad("position out of range"));
                }
                let (a, b) = (&steps[*at], &steps[*at + 1]);
                if result.from() != a.from() || result.to() != b.to() {
                    return Err(bad("contraction does not bound a 2-simplex"));
                }
                Simplex::edge(p, result.from(), result.to(), result.support)?;
                if !has_common_upper_bound(p, &[a.support, b.support, result.support]) {
                    return Err(bad("no common support"));
                }
                steps.splice(*at..=*at + 1, [result.clone()]);
            }
            Move::InsertDegenerate { at } => {
                if *at > steps.len() {
                    return Err(bad("position out of range"));
                }
                let v = self.vertex(*at);
                steps.insert(*at, Simplex::point(v).degenerate(0));
            }
            Move::RemoveDegenerate { at } => {
                if !steps.get(*at).is_some_and(is_degenerate_edge) {
                    return Err(bad("step is not degenerate"));
                }
                steps.remove(*at);
            }
        }
        Ok(Path { start: self.start, steps })
    }

    /// Replays a move sequence.
    pub fn replay(&self, p: &IndexPoset, moves: &[Move]) -> Result<Path, SimplicialError> {
        let mut cur = self.clone();
        for (i, m) in moves.iter().enumerate() {
            cur = cur.apply(p, m).map_err(|e| match e {
                SimplicialError::BadMove { reason, .. } => SimplicialError::BadMove { index: i, reason },
                other => other,
            })?;
        }
        Ok(cur)
    }
}

/// All one-move neighbours of `path`, with the move producing each.
pub fn elementary_deformations(path: &Path, p: &IndexPoset, canon: &Canonical) -> Vec<(Move, Path)> {
    let mut out = Vec::new();
    let n = path.len();
    for at in 0..n {
        let b = &path.steps[at];
        let (x, z) = (b.from(), b.to());
        let mut mids: Vec<usize> = canon.neighbours(x).iter().copied().filter(|y| canon.support.contains_key(&(*y, z))).collect();
        mids.extend([x, z]);
        mids.sort_unstable();
        mids.dedup();
        for y in mids {
            let (Some(first), Some(second)) = (canon.edge(x, y), canon.edge(y, z)) else { continue };
            // splitting off a degenerate step is the degeneracy move, not an expansion
            if is_degenerate_edge(&first) || is_degenerate_edge(&second) {
                continue;
            }
            if has_common_upper_bound(p, &[b.support, first.support, second.support]) {
                let m = Move::Expand { at, first, second };
                let q = path.apply(p, &m).expect("generated expansion is valid");
                out.push((m, q));
            }
        }
    }
    for at in 0..n.saturating_sub(1) {
        let (a, b) = (&path.steps[at], &path.steps[at + 1]);
        if is_degenerate_edge(a) || is_degenerate_edge(b) {
            continue;
        }
        if let Some(result) = canon.edge(a.from(), b.to()) {
            if has_common_upper_bound(p, &[a.support, b.support, result.support]) {
                let m = Move::Contract { at, result };
                let q = path.apply(p, &m).expect("generated contraction is valid");
                out.push((m, q));
            }
        }
    }
    for at in 0..n {
        if is_degenerate_edge(&path.steps[at]) {
            let m = Move::RemoveDegenerate { at };
            let q = path.apply(p, &m).expect("degenerate step");
            out.push((m, q));
        }
    }
    for at in 0..=n {
        let m = Move::InsertDegenerate { at };
        let q = path.apply(p, &m).expect("insertion is always valid");
        out.push((m, q));
    }
    out
}

/// The move undoing `m`, given the path `m` was applied to.
fn inverse(before: &Path, m: &Move) -> Move {
    match m {
        Move::Expand { at, .. } => Move::Contract { at: *at, result: before.steps[*at].clone() },
        Move::Contract { at, .. } => {
            Move::Expand { at: *at, first: before.steps[*at].clone(), second: before.steps[*at + 1].clone() }
        }
        Move::InsertDegenerate { at } => Move::RemoveDegenerate { at: *at },
        Move::RemoveDegenerate { at } => Move::InsertDegenerate { at: *at },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomotopyVerdict {
    /// Moves transforming the first path into the second.
    Yes(Vec<Move>),
    NoWithinCap,
}

/// Limits for [`homotopic`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchCap {
    /// Longest move sequence considered.
    pub moves: usize,
    /// Longest intermediate path.
    pub path_len: usize,
    /// Paths visited per side.
    pub states: usize,
}

impl SearchCap {
    pub fn moves(moves: usize) -> Self {
        Self { moves, path_len: 8, states: 200_000 }
    }
}

type Visited = HashMap<Path, Option<(Path, Move)>>;

fn trace(visited: &Visited, mut at: Path) -> Vec<(Path, Move)> {
    let mut out = Vec::new();
    while let Some(Some((prev, m))) = visited.get(&at) {
        out.push((prev.clone(), m.clone()));
        at = prev.clone();
    }
    out.reverse();
    out
}

/// Bidirectional breadth-first search for a deformation sequence from `a` to `b`.
pub fn homotopic(
    a: &Path,
    b: &Path,
    p: &IndexPoset,
    canon: &Canonical,
    cap: SearchCap,
) -> Result<HomotopyVerdict, SimplicialError> {
    if a.start() != b.start() || a.end() != b.end() {
        return Err(SimplicialError::EndpointMismatch);
    }
    let mut seen: [Visited; 2] = [HashMap::from([(a.clone(), None)]), HashMap::from([(b.clone(), None)])];
    let mut frontier: [Vec<Path>; 2] = [vec![a.clone()], vec![b.clone()]];
    let mut depth = [0usize; 2];
    let meet = |seen: &[Visited; 2], x: &Path| -> Vec<Move> {
        let fwd = trace(&seen[0], x.clone());
        let back = trace(&seen[1], x.clone());
        let mut moves: Vec<Move> = fwd.into_iter().map(|(_, m)| m).collect();
        // walk the backward chain from x towards b, undoing each move
        let mut cur = x.clone();
        for (prev, m) in back.into_iter().rev() {
            let undo = inverse(&prev, &m);
            debug_assert_eq!(cur, prev.apply(p, &m).expect("recorded move"));
            moves.push(undo);
            cur = prev;
        }
        moves
    };
    if a == b {
        return Ok(HomotopyVerdict::Yes(Vec::new()));
    }
    while depth[0] + depth[1] < cap.moves {
        let side = if frontier[0].len() <= frontier[1].len() { 0 } else { 1 };
        if frontier[side].is_empty() {
            break;
        }
        let expanded: Vec<Vec<(Move, Path)>> = frontier[side]
            .par_iter()
            .map(|x| {
                elementary_deformations(x, p, canon).into_iter().filter(|(_, q)| q.len() <= cap.path_len).collect()
            })
            .collect();
        let mut next = Vec::new();
        for (x, nbrs) in frontier[side].iter().zip(expanded) {
            for (m, q) in nbrs {
                if seen[side].contains_key(&q) {
                    continue;
                }
                seen[side].insert(q.clone(), Some((x.clone(), m)));
                if seen[1 - side].contains_key(&q) {
                    return Ok(HomotopyVerdict::Yes(meet(&seen, &q)));
                }
                next.push(q);
                if seen[side].len() >= cap.states {
                    return Ok(HomotopyVerdict::NoWithinCap);
                }
            }
        }
        frontier[side] = next;
        depth[side] += 1;
    }
    Ok(HomotopyVerdict::NoWithinCap)
}

/// Every 2-simplex of the canonical complex, with the smallest-id common upper bound as support.
pub fn canonical_two_simplices(p: &IndexPoset) -> Vec<Simplex> {
    let cx = TwoComplex::build(p, SupportPolicy::LexMinimal);
    let mut out = Vec::new();
    for cell in cx.cells.iter().filter(|c| c.len() == 3) {
        let e = |k: usize| cx.edges[cell[k].0];
        let (ab, bc, ac) = (e(0), e(1), e(2));
        let d2 = Simplex::edge_unchecked(ab.a, ab.b, ab.support);
        let d0 = Simplex::edge_unchecked(bc.a, bc.b, bc.support);
        let d1 = Simplex::edge_unchecked(ac.a, ac.b, ac.support);
        let ub = p.up(ab.support).intersect(p.up(bc.support)).intersect(p.up(ac.support));
        let support = ub.iter().min_by(|x, y| p.ids[*x].cmp(&p.ids[*y])).expect("cells have a common support");
        out.push(Simplex { support, faces: vec![d0, d1, d2] });
    }
    out
}

/// Canonical 1-simplices in both directions.
pub fn canonical_one_simplices(p: &IndexPoset) -> Vec<Simplex> {
    let cx = TwoComplex::build(p, SupportPolicy::LexMinimal);
    cx.edges
        .iter()
        .flat_map(|e| [Simplex::edge_unchecked(e.a, e.b, e.support), Simplex::edge_unchecked(e.b, e.a, e.support)])
        .collect()
}
