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

//! The canonical 2-complex of a poset: elements as vertices, 1-simplices with chosen supports as
//! edges, and boundaries of supported 2-simplices as 2-cells.

use super::IndexPoset;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};

/// Which common upper bounds become supports of canonical 1-simplices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SupportPolicy {
    /// The minimal upper bound with the smallest id.
    #[default]
    LexMinimal,
    AllMinimal,
    /// All minimal upper bounds, then further upper bounds by id until `cap` supports are chosen.
    AllUpperBounds { cap: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub support: usize,
}

/// An oriented edge: `forward` runs from `a` to `b`.
pub type Step = (usize, bool);

#[derive(Clone, Debug)]
pub struct TwoComplex {
    pub vertices: usize,
    pub edges: Vec<Edge>,
    /// Closed boundary loops of 2-cells.
    pub cells: Vec<Vec<Step>>,
    index: HashMap<(usize, usize, usize), usize>,
}

fn by_id(p: &IndexPoset, mut v: Vec<usize>) -> Vec<usize> {
    v.sort_by(|x, y| p.ids[*x].cmp(&p.ids[*y]).then(x.cmp(y)));
    v
}

impl TwoComplex {
    pub fn build(p: &IndexPoset, policy: SupportPolicy) -> Self {
        let n = p.len();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let ub = p.upper_bounds(a, b);
                if ub.is_empty() {
                    continue;
                }
                let minimal = by_id(p, p.minimal_in(&ub));
                let supports = match policy {
                    SupportPolicy::LexMinimal => minimal[..1].to_vec(),
                    SupportPolicy::AllMinimal => minimal,
                    SupportPolicy::AllUpperBounds { cap } => {
                        let mut s = minimal.clone();
                        for c in by_id(p, ub.iter().collect()) {
                            if s.len() >= cap.max(minimal.len()) {
                                break;
                            }
                            if !s.contains(&c) {
                                s.push(c);
                            }
                        }
                        s
                    }
                };
                edges.extend(supports.into_iter().map(|support| Edge { a, b, support }));
            }
        }
        let index: HashMap<_, _> = edges.iter().enumerate().map(|(i, e)| ((e.a, e.b, e.support), i)).collect();
        let mut parallel: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, e) in edges.iter().enumerate() {
            parallel.entry((e.a, e.b)).or_default().push(i);
        }
        let mut cells: BTreeSet<Vec<Step>> = BTreeSet::new();
        for u in 0..n {
            let down = p.down(u);
            // first edge per pair supported below u
            let mut avail: HashMap<(usize, usize), usize> = HashMap::new();
            let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
            for a in down.iter() {
                for b in down.iter().filter(|b| *b > a) {
                    let Some(list) = parallel.get(&(a, b)) else { continue };
                    let mut inside = list.iter().filter(|e| down.contains(edges[**e].support));
                    if let Some(&first) = inside.next() {
                        avail.insert((a, b), first);
                        adj[a].push(b);
                        for &other in inside {
                            cells.insert(vec![(first, true), (other, false)]);
                        }
                    }
                }
            }
            for a in down.iter() {
                for &b in &adj[a] {
                    for &c in &adj[b] {
                        if let Some(&ac) = avail.get(&(a, c)) {
                            cells.insert(vec![(avail[&(a, b)], true), (avail[&(b, c)], true), (ac, false)]);
                        }
                    }
                }
            }
        }
        Self { vertices: n, edges, cells: cells.into_iter().collect(), index }
    }

    pub fn edge_index(&self, a: usize, b: usize, support: usize) -> Option<usize> {
        self.index.get(&(a, b, support)).copied()
    }

    /// Oriented edges realising the 1-simplex `from -> to` with the given support, up to homotopy.
    /// A 1-simplex that is not canonical is routed through its support.
    pub fn steps_for(&self, from: usize, to: usize, support: usize) -> Vec<Step> {
        if from == to {
            return Vec::new();
        }
        let (a, b, fwd) = if from < to { (from, to, true) } else { (to, from, false) };
        if let Some(e) = self.edge_index(a, b, support) {
            return vec![(e, fwd)];
        }
        let mut out = self.steps_for(from, support, support);
        out.extend(self.steps_for(support, to, support));
        out
    }

    pub fn source(&self, s: Step) -> usize {
        let e = self.edges[s.0];
        if s.1 {
            e.a
        } else {
            e.b
        }
    }

    pub fn target(&self, s: Step) -> usize {
        let e = self.edges[s.0];
        if s.1 {
            e.b
        } else {
            e.a
        }
    }
}
