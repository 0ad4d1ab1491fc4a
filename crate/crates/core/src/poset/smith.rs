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

//! Integer abelian invariants: sparse unit-pivot elimination followed by a dense Smith normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

pub type SparseRow = BTreeMap<usize, BigInt>;

/// Nonzero Smith diagonal of a dense integer matrix, positive and successively dividing.
pub fn smith_diagonal(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the lower-right block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero() && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        let mut done = false;
        while !done {
            done = true;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                for j in t..cols {
                    let d = &q * &m[t][j];
                    m[i][j] -= d;
                }
                if !m[i][t].is_zero() {
                    m.swap(t, i);
                    done = false;
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for row in m.iter_mut().skip(t) {
                    let d = &q * &row[t];
                    row[j] -= d;
                }
                if !m[t][j].is_zero() {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    done = false;
                }
            }
            if done {
                // enforce divisibility by folding an offending row into the pivot row
                'outer: for i in t + 1..rows {
                    for j in t + 1..cols {
                        if !(&m[i][j] % &m[t][t]).is_zero() {
                            for k in t..cols {
                                let v = m[i][k].clone();
                                m[t][k] += v;
                            }
                            done = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

/// Rank over the rationals of a dense integer matrix.
pub fn rational_rank(m: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, p);
        let piv = a[rank][c].clone();
        for i in rank + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &piv;
            for j in c..cols {
                let d = &f * &a[rank][j];
                a[i][j] -= d;
            }
        }
        rank += 1;
    }
    rank
}

fn axpy(target: &mut SparseRow, coef: &BigInt, row: &SparseRow) {
    for (c, v) in row {
        let e = target.entry(*c).or_insert_with(BigInt::zero);
        *e -= coef * v;
        if e.is_zero() {
            target.remove(c);
        }
    }
}

/// A relation matrix split into unit-pivot rows and a residual block on the remaining columns.
#[derive(Clone, Debug)]
pub struct AbelianReduction {
    cols: usize,
    /// Pivot column and its row, normalised to coefficient one, in creation order.
    pivots: Vec<(usize, SparseRow)>,
    residual: Vec<SparseRow>,
}

impl AbelianReduction {
    pub fn new(cols: usize, rows: impl IntoIterator<Item = SparseRow>) -> Self {
        let mut me = Self { cols, pivots: Vec::new(), residual: Vec::new() };
        let mut pending: Vec<SparseRow> = rows.into_iter().collect();
        loop {
            let before = me.pivots.len();
            let mut rest = Vec::new();
            for mut row in pending {
                me.reduce(&mut row);
                if row.is_empty() {
                    continue;
                }
                let unit = row.iter().find(|(_, v)| v.abs().is_one()).map(|(c, v)| (*c, v.clone()));
                match unit {
                    Some((c, v)) => {
                        if v.is_negative() {
                            for x in row.values_mut() {
                                *x = -x.clone();
                            }
                        }
                        me.pivots.push((c, row));
                    }
                    None => rest.push(row),
                }
            }
            pending = rest;
            if me.pivots.len() == before {
                break;
            }
        }
        me.residual = pending;
        me
    }

    fn reduce(&self, row: &mut SparseRow) {
        for (c, prow) in &self.pivots {
            if let Some(v) = row.get(c).cloned() {
                axpy(row, &v, prow);
            }
        }
    }

    fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for (c, _) in &self.pivots {
            is_pivot[*c] = true;
        }
        (0..self.cols).filter(|c| !is_pivot[*c]).collect()
    }

    fn dense(&self, rows: &[SparseRow]) -> Vec<Vec<BigInt>> {
        let free = self.free_columns();
        rows.iter().map(|r| free.iter().map(|c| r.get(c).cloned().unwrap_or_default()).collect()).collect()
    }

    /// Free rank and torsion coefficients of the cokernel.
    pub fn invariants(&self) -> (usize, Vec<BigInt>) {
        let free = self.free_columns().len();
        if self.residual.is_empty() {
            return (free, Vec::new());
        }
        let diag = smith_diagonal(self.dense(&self.residual));
        let torsion = diag.iter().filter(|d| !d.is_one()).cloned().collect();
        (free - diag.len(), torsion)
    }

    /// Whether `v` lies in the rational span of the rows.
    pub fn in_rational_span(&self, v: &SparseRow) -> bool {
        let mut v = v.clone();
        self.reduce(&mut v);
        if v.is_empty() {
            return true;
        }
        let mut m = self.dense(&self.residual);
        let base = rational_rank(&m);
        m.extend(self.dense(std::slice::from_ref(&v)));
        rational_rank(&m) == base
    }
}
