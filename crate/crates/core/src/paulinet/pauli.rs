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

//! Pauli strings over at most 128 qubit sites and exact sparse linear combinations of them.
//!
//! A string `(x, z)` stands for the Hermitian operator `i^{|x & z|} X^x Z^z`, so a site with both
//! bits set carries `Y`. Products pick up a phase `i^k` which is tracked exactly.

use crate::scalar::Gauss;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

pub const MAX_SITES: usize = 128;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    pub x: u128,
    pub z: u128,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PauliError {
    #[error("site {0} is outside the supported range 1..={MAX_SITES}")]
    SiteOutOfRange(usize),
    #[error("site {0} appears twice in one string")]
    RepeatedSite(usize),
    #[error("malformed Pauli text: {0}")]
    Syntax(String),
}

fn bit(site: usize) -> u128 {
    assert!(site < MAX_SITES, "site {site} exceeds {MAX_SITES}");
    1u128 << site
}

impl PauliString {
    pub const IDENTITY: PauliString = PauliString { x: 0, z: 0 };

    pub const fn new(x: u128, z: u128) -> Self {
        Self { x, z }
    }

    pub fn x_on(site: usize) -> Self {
        Self::new(bit(site), 0)
    }

    pub fn z_on(site: usize) -> Self {
        Self::new(0, bit(site))
    }

    pub fn y_on(site: usize) -> Self {
        Self::new(bit(site), bit(site))
    }

    /// `Z` on every site of `mask`.
    pub fn z_mask(mask: u128) -> Self {
        Self::new(0, mask)
    }

    /// `X` on every site of `mask`.
    pub fn x_mask(mask: u128) -> Self {
        Self::new(mask, 0)
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn support(&self) -> u128 {
        self.x | self.z
    }

    pub fn weight(&self) -> u32 {
        self.support().count_ones()
    }

    /// Symplectic form: `false` iff the strings commute.
    pub fn omega(&self, other: &Self) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()) % 2 == 1
    }

    pub fn commutes(&self, other: &Self) -> bool {
        !self.omega(other)
    }

    /// `self * other = i^k * r`, returned as `(k mod 4, r)`.
    pub fn mul(&self, other: &Self) -> (u32, PauliString) {
        let r = PauliString::new(self.x ^ other.x, self.z ^ other.z);
        let k = (self.x & self.z).count_ones() + (other.x & other.z).count_ones()
            + 2 * (self.z & other.x).count_ones()
            + 4 * MAX_SITES as u32
            - (r.x & r.z).count_ones();
        (k % 4, r)
    }

    pub fn permute(&self, perm: &SitePerm) -> Self {
        Self::new(perm.apply_mask(self.x), perm.apply_mask(self.z))
    }

    /// Letter on one site: `I`, `X`, `Y` or `Z`.
    pub fn letter(&self, site: usize) -> char {
        match ((self.x >> site) & 1, (self.z >> site) & 1) {
            (0, 0) => 'I',
            (1, 0) => 'X',
            (0, 1) => 'Z',
            _ => 'Y',
        }
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "I");
        }
        let mut first = true;
        let mut s = self.support();
        while s != 0 {
            let site = s.trailing_zeros() as usize;
            s &= s - 1;
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{}{}", self.letter(site), site + 1)?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = PauliError;

    /// Parses `X1 Z3 Y4` (1-indexed sites) or `I`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "I" || s.is_empty() {
            return Ok(Self::IDENTITY);
        }
        let mut out = Self::IDENTITY;
        for tok in s.split_whitespace() {
            let mut chars = tok.chars();
            let letter = chars.next().ok_or_else(|| PauliError::Syntax(tok.into()))?;
            let site: usize = chars
                .as_str()
                .parse()
                .map_err(|_| PauliError::Syntax(tok.into()))?;
            if site == 0 || site > MAX_SITES {
                return Err(PauliError::SiteOutOfRange(site));
            }
            let b = 1u128 << (site - 1);
            if out.support() & b != 0 {
                return Err(PauliError::RepeatedSite(site));
            }
            match letter {
                'X' => out.x |= b,
                'Z' => out.z |= b,
                'Y' => {
                    out.x |= b;
                    out.z |= b;
                }
                _ => return Err(PauliError::Syntax(tok.into())),
            }
        }
        Ok(out)
    }
}

/// A permutation of sites; `map[i]` is the image of site `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SitePerm {
    pub map: Vec<u32>,
}

impl SitePerm {
    pub fn identity(n: usize) -> Self {
        Self { map: (0..n as u32).collect() }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn image(&self, site: usize) -> usize {
        self.map[site] as usize
    }

    pub fn apply_mask(&self, mask: u128) -> u128 {
        let mut out = 0u128;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            out |= 1u128 << self.map[i];
        }
        out
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Self { map: inv }
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        Self { map: other.map.iter().map(|&j| self.map[j as usize]).collect() }
    }
}

/// Exact finite linear combination of Pauli strings with Gaussian-rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliElement {
    terms: BTreeMap<PauliString, Gauss>,
}

impl PauliElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::scalar(Gauss::one())
    }

    pub fn scalar(c: Gauss) -> Self {
        Self::term(c, PauliString::IDENTITY)
    }

    pub fn string(s: PauliString) -> Self {
        Self::term(Gauss::one(), s)
    }

    pub fn term(c: Gauss, s: PauliString) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(s, c);
        }
        Self { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, &Gauss)> {
        self.terms.iter()
    }

    pub fn strings(&self) -> impl Iterator<Item = &PauliString> {
        self.terms.keys()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, s: &PauliString) -> Gauss {
        self.terms.get(s).copied().unwrap_or_else(Gauss::zero)
    }

    fn accumulate(&mut self, s: PauliString, c: Gauss) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(s).or_insert_with(Gauss::zero);
        *entry = *entry + c;
        if entry.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.accumulate(*s, *c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-Gauss::one()))
    }

    pub fn scale(&self, c: Gauss) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(s, v)| (*s, *v * c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (s1, c1) in &self.terms {
            for (s2, c2) in &other.terms {
                let (k, s) = s1.mul(s2);
                out.accumulate(s, *c1 * *c2 * Gauss::i_pow(k as i64));
            }
        }
        out
    }

    /// Hermitian strings make the adjoint a coefficient conjugation.
    pub fn adjoint(&self) -> Self {
        Self { terms: self.terms.iter().map(|(s, c)| (*s, c.conj())).collect() }
    }

    pub fn permute(&self, perm: &SitePerm) -> Self {
        Self { terms: self.terms.iter().map(|(s, c)| (s.permute(perm), *c)).collect() }
    }

    /// `u A u*`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        u.mul(self).mul(&u.adjoint())
    }

    pub fn support(&self) -> u128 {
        self.terms.keys().fold(0, |m, s| m | s.support())
    }

    pub fn as_scalar(&self) -> Option<Gauss> {
        match self.terms.len() {
            0 => Some(Gauss::zero()),
            1 => self.terms.get(&PauliString::IDENTITY).copied(),
            _ => None,
        }
    }

    /// A single phased string, if the element is one.
    pub fn as_monomial(&self) -> Option<(Gauss, PauliString)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(s, c)| (*c, *s))
        } else {
            None
        }
    }

    pub fn is_unitary(&self) -> bool {
        let one = Self::identity();
        self.mul(&self.adjoint()) == one && self.adjoint().mul(self) == one
    }

    pub fn is_projection(&self) -> bool {
        self.adjoint() == *self && self.mul(self) == *self
    }
}

impl fmt::Display for PauliElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " ; ")?;
            }
            write!(f, "{c} {s}")?;
        }
        Ok(())
    }
}

impl FromStr for PauliElement {
    type Err = PauliError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let text = text.trim();
        if text == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for term in text.split(';') {
            let term = term.trim();
            let close = term.find(')').ok_or_else(|| PauliError::Syntax(term.into()))?;
            let coeff: Gauss = term[..=close].parse().map_err(PauliError::Syntax)?;
            let string: PauliString = term[close + 1..].parse()?;
            out.accumulate(string, coeff);
        }
        Ok(out)
    }
}
