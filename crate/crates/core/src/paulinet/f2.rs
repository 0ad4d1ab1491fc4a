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

//! Subspaces of the symplectic space F2^{2n} in canonical reduced row-echelon form.
//!
//! A vector is stored as a [`PauliString`]; the 256-bit key orders `z` above `x`.

use crate::paulinet::pauli::{PauliString, SitePerm};

fn lead(v: &PauliString) -> Option<u32> {
    if v.z != 0 {
        Some(128 + 127 - v.z.leading_zeros())
    } else if v.x != 0 {
        Some(127 - v.x.leading_zeros())
    } else {
        None
    }
}

fn has_bit(v: &PauliString, b: u32) -> bool {
    if b >= 128 {
        (v.z >> (b - 128)) & 1 == 1
    } else {
        (v.x >> b) & 1 == 1
    }
}

fn xor(a: &PauliString, b: &PauliString) -> PauliString {
    PauliString::new(a.x ^ b.x, a.z ^ b.z)
}

/// Canonical basis of an F2 subspace: distinct pivots, sorted by descending pivot, each pivot
/// cleared in every other basis vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Vec<PauliString>,
}

impl Subspace {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn span<'a>(vectors: impl IntoIterator<Item = &'a PauliString>) -> Self {
        let mut s = Self::zero();
        for v in vectors {
            s.insert(*v);
        }
        s
    }

    /// All strings on the sites of `mask`.
    pub fn full(mask: u128) -> Self {
        let mut gens = Vec::new();
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            gens.push(PauliString::x_on(i));
            gens.push(PauliString::z_on(i));
        }
        Self::span(&gens)
    }

    pub fn basis(&self) -> &[PauliString] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn support(&self) -> u128 {
        self.basis.iter().fold(0, |m, v| m | v.support())
    }

    fn reduce(&self, v: &PauliString) -> PauliString {
        let mut r = *v;
        for b in &self.basis {
            let p = lead(b).expect("basis vectors are nonzero");
            if has_bit(&r, p) {
                r = xor(&r, b);
            }
        }
        r
    }

    /// Returns `true` if the dimension grew.
    pub fn insert(&mut self, v: PauliString) -> bool {
        let r = self.reduce(&v);
        let Some(p) = lead(&r) else {
            return false;
        };
        for b in self.basis.iter_mut() {
            if has_bit(b, p) {
                *b = xor(b, &r);
            }
        }
        let pos = self.basis.iter().position(|b| lead(b) < Some(p)).unwrap_or(self.basis.len());
        self.basis.insert(pos, r);
        true
    }

    pub fn contains(&self, v: &PauliString) -> bool {
        self.reduce(v).is_identity()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut s = self.clone();
        for b in &other.basis {
            s.insert(*b);
        }
        s
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let all: Vec<PauliString> = self.basis.iter().chain(other.basis.iter()).copied().collect();
        let n = self.basis.len();
        let mut out = Self::zero();
        for comb in kernel(&all) {
            let mut v = PauliString::IDENTITY;
            for (i, b) in self.basis.iter().enumerate().take(n) {
                if comb.get(i) {
                    v = xor(&v, b);
                }
            }
            out.insert(v);
        }
        out
    }

    /// `{ w in within : w commutes with every vector of self }`.
    pub fn commutant_within(&self, within: &Self) -> Self {
        // Encode each basis vector of `within` by its pattern of symplectic products with `self`.
        let images: Vec<BitRow> = within
            .basis
            .iter()
            .map(|w| {
                let mut row = BitRow::new(self.basis.len());
                for (j, a) in self.basis.iter().enumerate() {
                    if w.omega(a) {
                        row.set(j);
                    }
                }
                row
            })
            .collect();
        let mut out = Self::zero();
        for comb in kernel_rows(&images, self.basis.len()) {
            let mut v = PauliString::IDENTITY;
            for (i, w) in within.basis.iter().enumerate() {
                if comb.get(i) {
                    v = xor(&v, w);
                }
            }
            out.insert(v);
        }
        out
    }

    /// Strings of the subspace that commute with the whole subspace.
    pub fn center(&self) -> Self {
        self.commutant_within(self)
    }

    pub fn permute(&self, perm: &SitePerm) -> Self {
        let moved: Vec<PauliString> = self.basis.iter().map(|b| b.permute(perm)).collect();
        Self::span(&moved)
    }

    /// Every vector of the subspace; only sensible for small dimensions.
    pub fn elements(&self) -> Vec<PauliString> {
        assert!(self.basis.len() <= 20, "refusing to enumerate 2^{} vectors", self.basis.len());
        let mut out = vec![PauliString::IDENTITY];
        for b in &self.basis {
            let extra: Vec<PauliString> = out.iter().map(|v| xor(v, b)).collect();
            out.extend(extra);
        }
        out.sort();
        out
    }
}

/// A dense bit vector used for combination bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    pub fn new(len: usize) -> Self {
        Self { words: vec![0; len.div_ceil(64).max(1)] }
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    pub fn xor_assign(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    fn lead(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
    }
}

/// Kernel basis of the map `c -> sum c_i v_i`.
fn kernel(vectors: &[PauliString]) -> Vec<BitRow> {
    let mut pivots: Vec<(PauliString, BitRow)> = Vec::new();
    let mut out = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let mut r = *v;
        let mut comb = BitRow::new(vectors.len());
        comb.set(i);
        for (pv, pc) in &pivots {
            let p = lead(pv).expect("pivot rows are nonzero");
            if has_bit(&r, p) {
                r = xor(&r, pv);
                comb.xor_assign(pc);
            }
        }
        if r.is_identity() {
            out.push(comb);
        } else {
            // keep pivots fully reduced against the new one so later reductions stay single-pass
            let p = lead(&r).expect("nonzero");
            for (pv, pc) in pivots.iter_mut() {
                if has_bit(pv, p) {
                    *pv = xor(pv, &r);
                    pc.xor_assign(&comb);
                }
            }
            pivots.push((r, comb));
        }
    }
    out
}

/// Kernel basis for rows given as bit vectors of length `width`.
fn kernel_rows(rows: &[BitRow], width: usize) -> Vec<BitRow> {
    let mut pivots: Vec<(BitRow, BitRow, usize)> = Vec::new();
    let mut out = Vec::new();
    for (i, v) in rows.iter().enumerate() {
        let mut r = v.clone();
        if r.words.len() < BitRow::new(width).words.len() {
            r.words.resize(BitRow::new(width).words.len(), 0);
        }
        let mut comb = BitRow::new(rows.len());
        comb.set(i);
        for (pv, pc, p) in &pivots {
            if r.get(*p) {
                r.xor_assign(pv);
                comb.xor_assign(pc);
            }
        }
        match r.lead() {
            None => out.push(comb),
            Some(p) => {
                for (pv, pc, _) in pivots.iter_mut() {
                    if pv.get(p) {
                        pv.xor_assign(&r);
                        pc.xor_assign(&comb);
                    }
                }
                pivots.push((r, comb, p));
            }
        }
    }
    out
}
