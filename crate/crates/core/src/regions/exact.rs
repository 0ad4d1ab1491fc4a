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

//! Exact sign decisions for angular comparisons.
//!
//! Quantities of the form `s * sqrt(q)` (rational `q`) are compared against `cos(phi * pi)` for
//! rational `phi`. When `cos^2(phi * pi)` is rational the comparison is algebraic. Otherwise the
//! two numbers cannot be equal, and shrinking rational enclosures of the cosine decide it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

pub type Rat = BigRational;

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// The real number `sign * sqrt(sq)` with `sq >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedSqrt {
    pub sign: i8,
    pub sq: Rat,
}

impl SignedSqrt {
    pub fn new(sign: i8, sq: Rat) -> Self {
        if sq.is_zero() {
            Self { sign: 0, sq }
        } else {
            Self { sign, sq }
        }
    }

    /// `num / sqrt(den)` for `den > 0`.
    pub fn ratio(num: &Rat, den: &Rat) -> Self {
        let sign = if num.is_positive() {
            1
        } else if num.is_negative() {
            -1
        } else {
            0
        };
        Self::new(sign, num * num / den)
    }

    pub fn from_rat(r: &Rat) -> Self {
        Self::ratio(r, &Rat::one())
    }
}

pub fn cmp_sqrt(a: &SignedSqrt, b: &SignedSqrt) -> Ordering {
    match a.sign.cmp(&b.sign) {
        Ordering::Equal => match a.sign {
            0 => Ordering::Equal,
            1 => a.sq.cmp(&b.sq),
            _ => b.sq.cmp(&a.sq),
        },
        o => o,
    }
}

/// `cos(phi * pi)` when its square is rational.
pub fn cos_pi_exact(phi: &Rat) -> Option<SignedSqrt> {
    let two = int(2);
    let mut f = phi % &two;
    if f.is_negative() {
        f += &two;
    }
    if f > Rat::one() {
        f = &two - f;
    }
    let twelfths = &f * int(12);
    if !twelfths.is_integer() {
        return None;
    }
    let k: i64 = twelfths.to_integer().try_into().ok()?;
    let (sign, sq) = match k {
        0 => (1, int(1)),
        2 => (1, rat(3, 4)),
        3 => (1, rat(1, 2)),
        4 => (1, rat(1, 4)),
        6 => (0, int(0)),
        8 => (-1, rat(1, 4)),
        9 => (-1, rat(1, 2)),
        10 => (-1, rat(3, 4)),
        12 => (-1, int(1)),
        _ => return None,
    };
    Some(SignedSqrt::new(sign, sq))
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

fn round_down(r: &Rat, bits: u32) -> Rat {
    let d = pow2(bits);
    Rat::new((r * Rat::from_integer(d.clone())).floor().to_integer(), d)
}

fn round_up(r: &Rat, bits: u32) -> Rat {
    let d = pow2(bits);
    Rat::new((r * Rat::from_integer(d.clone())).ceil().to_integer(), d)
}

/// Enclosure of `atan(1/m)`; the alternating series brackets the value.
fn atan_inv(m: i64, bits: u32) -> (Rat, Rat) {
    let eps = Rat::new(BigInt::one(), pow2(bits + 4));
    let m2 = int(m * m);
    let mut power = rat(1, m);
    let mut sum = Rat::zero();
    let mut k = 0i64;
    loop {
        let term = &power / int(2 * k + 1);
        let next = &power / &m2 / int(2 * k + 3);
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        if next < eps {
            // the next term has the opposite sign of the one just added
            let other = if k % 2 == 0 { &sum - &next } else { &sum + &next };
            let (lo, hi) = if other < sum { (other, sum) } else { (sum, other) };
            return (round_down(&lo, bits + 2), round_up(&hi, bits + 2));
        }
        power = &power / &m2;
        k += 1;
    }
}

/// Enclosure of pi from Machin's arctangent formula.
pub fn pi_bounds(bits: u32) -> (Rat, Rat) {
    let (a_lo, a_hi) = atan_inv(5, bits + 6);
    let (b_lo, b_hi) = atan_inv(239, bits + 6);
    let lo = int(16) * a_lo - int(4) * &b_hi;
    let hi = int(16) * a_hi - int(4) * &b_lo;
    (round_down(&lo, bits), round_up(&hi, bits))
}

/// Taylor polynomial of cos at `x >= 0` and a bound on the tail.
fn cos_taylor(x: &Rat, bits: u32) -> (Rat, Rat) {
    let eps = Rat::new(BigInt::one(), pow2(bits + 4));
    let x2 = x * x;
    let mut term = Rat::one();
    let mut sum = Rat::zero();
    let mut k = 0i64;
    loop {
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        let next = &term * &x2 / int((2 * k + 1) * (2 * k + 2));
        // once terms decrease the tail is bounded by the first omitted term
        if next < eps && next < term {
            return (round_down(&sum, bits + 4), next + Rat::new(BigInt::one(), pow2(bits + 4)));
        }
        term = next;
        k += 1;
    }
}

type CosCache = Mutex<HashMap<(Rat, u32), (Rat, Rat)>>;

fn cos_cache() -> &'static CosCache {
    static CACHE: OnceLock<CosCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Rational enclosure `[lo, hi]` of `cos(phi * pi)` for `phi` in `[0, 1]`, width about `2^-bits`.
pub fn cos_pi_bounds(phi: &Rat, bits: u32) -> (Rat, Rat) {
    assert!(!phi.is_negative() && *phi <= Rat::one(), "phi must lie in [0, 1]");
    let key = (phi.clone(), bits);
    if let Some(v) = cos_cache().lock().expect("cache poisoned").get(&key) {
        return v.clone();
    }
    let (p_lo, p_hi) = pi_bounds(bits + 8);
    let x_lo = phi * p_lo;
    let x_hi = phi * p_hi;
    // cos decreases on [0, pi]
    let (t_hi_x, r_hi_x) = cos_taylor(&x_hi, bits + 4);
    let (t_lo_x, r_lo_x) = cos_taylor(&x_lo, bits + 4);
    let slack = Rat::new(BigInt::one(), pow2(bits + 6));
    let lo = round_down(&(t_hi_x - r_hi_x - &slack), bits + 2).max(int(-1));
    let hi = round_up(&(t_lo_x + r_lo_x + &slack), bits + 2).min(int(1));
    cos_cache().lock().expect("cache poisoned").insert(key, (lo.clone(), hi.clone()));
    (lo, hi)
}

/// Compares `c` with `cos(phi * pi)` for `phi` in `[0, 1]`.
pub fn cmp_cos_pi(c: &SignedSqrt, phi: &Rat) -> Ordering {
    if let Some(exact) = cos_pi_exact(phi) {
        return cmp_sqrt(c, &exact);
    }
    let mut bits = 48;
    loop {
        let (lo, hi) = cos_pi_bounds(phi, bits);
        if cmp_sqrt(c, &SignedSqrt::from_rat(&hi)) == Ordering::Greater {
            return Ordering::Greater;
        }
        if cmp_sqrt(c, &SignedSqrt::from_rat(&lo)) == Ordering::Less {
            return Ordering::Less;
        }
        bits *= 2;
        assert!(bits <= 1 << 14, "cosine comparison failed to separate");
    }
}
