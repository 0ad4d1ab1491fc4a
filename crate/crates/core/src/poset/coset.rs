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

//! Todd-Coxeter enumeration of the cosets of the trivial subgroup, with a row budget.
//!
//! Letters are column indices: `2g` is generator `g`, `2g + 1` its inverse.

const NONE: usize = usize::MAX;

pub fn inverse_letter(x: usize) -> usize {
    x ^ 1
}

/// Permutation representation on the cosets, coset 0 being the subgroup itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    pub generators: usize,
    /// `rows[c][x]` is the coset reached from `c` by letter `x`.
    pub rows: Vec<Vec<usize>>,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.rows.len()
    }

    /// Image of coset `c` under a word.
    pub fn apply(&self, c: usize, word: &[usize]) -> usize {
        word.iter().fold(c, |c, x| self.rows[c][*x])
    }

    /// Checks that every relator fixes every coset and that each generator acts bijectively.
    pub fn is_representation(&self, relators: &[Vec<usize>]) -> bool {
        let n = self.index();
        for x in 0..2 * self.generators {
            let mut hit = vec![false; n];
            for c in 0..n {
                let d = self.rows[c][x];
                if d >= n || hit[d] || self.rows[d][inverse_letter(x)] != c {
                    return false;
                }
                hit[d] = true;
            }
        }
        relators.iter().all(|r| (0..n).all(|c| self.apply(c, r) == c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Enumeration {
    Complete(CosetTable),
    BudgetExhausted { defined: usize },
}

struct Enumerator {
    cols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    budget: usize,
}

impl Enumerator {
    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = c;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), ()> {
        if self.table.len() >= self.budget {
            return Err(());
        }
        let d = self.table.len();
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(d);
        self.table[c][x] = d;
        self.table[d][inverse_letter(x)] = c;
        Ok(())
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi] = lo;
        queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.table[e][x];
                if f == NONE {
                    continue;
                }
                let xi = inverse_letter(x);
                if self.table[f][xi] == e {
                    self.table[f][xi] = NONE;
                }
                let (e1, f1) = (self.rep(e), self.rep(f));
                if self.table[e1][x] != NONE {
                    let t = self.table[e1][x];
                    self.merge(f1, t, &mut queue);
                } else if self.table[f1][xi] != NONE {
                    let t = self.table[f1][xi];
                    self.merge(e1, t, &mut queue);
                } else {
                    self.table[e1][x] = f1;
                    self.table[f1][xi] = e1;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<(), ()> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.table[f][w[i]] != NONE {
                f = self.table[f][w[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != c {
                    self.coincidence(f, c);
                }
                return Ok(());
            }
            while j >= i as isize && self.table[b][inverse_letter(w[j as usize])] != NONE {
                b = self.table[b][inverse_letter(w[j as usize])];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.table[f][w[i]] = b;
                self.table[b][inverse_letter(w[i])] = f;
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }
}

/// Enumerates the cosets of the trivial subgroup in the group presented by `generators` and
/// `relators`, defining at most `budget` cosets in total.
pub fn enumerate(generators: usize, relators: &[Vec<usize>], budget: usize) -> Enumeration {
    let cols = 2 * generators;
    let mut en = Enumerator { cols, table: vec![vec![NONE; cols]], parent: vec![0], budget: budget.max(1) };
    let mut c = 0;
    while c < en.table.len() {
        if en.live(c) {
            for r in relators {
                if en.scan_and_fill(c, r).is_err() {
                    return Enumeration::BudgetExhausted { defined: en.table.len() };
                }
                if !en.live(c) {
                    break;
                }
            }
            if en.live(c) {
                for x in 0..cols {
                    if en.table[c][x] == NONE && en.define(c, x).is_err() {
                        return Enumeration::BudgetExhausted { defined: en.table.len() };
                    }
                }
            }
        }
        c += 1;
    }
    let live: Vec<usize> = (0..en.table.len()).filter(|c| en.live(*c)).collect();
    let mut slot = vec![NONE; en.table.len()];
    for (k, c) in live.iter().enumerate() {
        slot[*c] = k;
    }
    let rows = live
        .iter()
        .map(|c| {
            (0..cols)
                .map(|x| {
                    let t = en.table[*c][x];
                    slot[en.rep(t)]
                })
                .collect()
        })
        .collect();
    Enumeration::Complete(CosetTable { generators, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> Vec<usize> {
        // lowercase a, b, c... are generators, uppercase their inverses
        s.chars()
            .map(|ch| {
                if ch.is_ascii_lowercase() {
                    2 * (ch as usize - 'a' as usize)
                } else {
                    2 * (ch as usize - 'A' as usize) + 1
                }
            })
            .collect()
    }

    fn order(generators: usize, rels: &[&str]) -> usize {
        let rels: Vec<Vec<usize>> = rels.iter().map(|r| word(r)).collect();
        match enumerate(generators, &rels, 100_000) {
            Enumeration::Complete(t) => {
                assert!(t.is_representation(&rels));
                t.index()
            }
            Enumeration::BudgetExhausted { .. } => panic!("budget"),
        }
    }

    #[test]
    fn small_group_orders() {
        assert_eq!(order(1, &["aaaaa"]), 5);
        assert_eq!(order(2, &["aa", "bbb", "ababab"]), 12);
        assert_eq!(order(2, &["aaa", "bb", "abab"]), 6);
        // a trivial group in disguise
        assert_eq!(order(2, &["aab", "abb"]), 3);
        assert_eq!(order(2, &["ab", "aB"]), 2);
        assert_eq!(order(2, &["aab", "aaab"]), 1);
        assert_eq!(order(0, &[]), 1);
    }

    #[test]
    fn infinite_group_exhausts_budget() {
        let rels = vec![word("abAB")];
        assert!(matches!(enumerate(2, &rels, 500), Enumeration::BudgetExhausted { .. }));
    }
}
