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

//! Exact Gaussian rationals `a + b i` with `a, b` in Q.
//!
//! Arithmetic panics on `i128` overflow instead of wrapping, so a value is either exact or the
//! computation aborts.

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Zero};
use std::fmt;
use std::str::FromStr;

pub type Q = Ratio<i128>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gauss {
    pub re: Q,
    pub im: Q,
}

fn add_q(a: &Q, b: &Q) -> Q {
    a.checked_add(b).expect("coefficient overflow")
}

fn sub_q(a: &Q, b: &Q) -> Q {
    a.checked_sub(b).expect("coefficient overflow")
}

fn mul_q(a: &Q, b: &Q) -> Q {
    a.checked_mul(b).expect("coefficient overflow")
}

impl Gauss {
    pub const fn new(re: Q, im: Q) -> Self {
        Self { re, im }
    }

    pub fn from_int(n: i128) -> Self {
        Self::new(Q::from_integer(n), Q::zero())
    }

    pub fn real(re: Q) -> Self {
        Self::new(re, Q::zero())
    }

    pub fn zero() -> Self {
        Self::new(Q::zero(), Q::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self::new(Q::zero(), Q::one())
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => Self::from_int(-1),
            _ => -Self::i(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re, -self.im)
    }

    /// `|z|^2`, always real.
    pub fn norm_sqr(&self) -> Q {
        add_q(&mul_q(&self.re, &self.re), &mul_q(&self.im, &self.im))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(self.re / n, -self.im / n))
    }

    /// Unit Gaussian rationals are exactly `1, i, -1, -i` and rational points of the unit circle.
    pub fn is_unimodular(&self) -> bool {
        self.norm_sqr().is_one()
    }
}

impl std::ops::Add for Gauss {
    type Output = Gauss;
    fn add(self, o: Gauss) -> Gauss {
        Gauss::new(add_q(&self.re, &o.re), add_q(&self.im, &o.im))
    }
}

impl std::ops::Sub for Gauss {
    type Output = Gauss;
    fn sub(self, o: Gauss) -> Gauss {
        Gauss::new(sub_q(&self.re, &o.re), sub_q(&self.im, &o.im))
    }
}

impl std::ops::Mul for Gauss {
    type Output = Gauss;
    fn mul(self, o: Gauss) -> Gauss {
        let re = sub_q(&mul_q(&self.re, &o.re), &mul_q(&self.im, &o.im));
        let im = add_q(&mul_q(&self.re, &o.im), &mul_q(&self.im, &o.re));
        Gauss::new(re, im)
    }
}

impl std::ops::Neg for Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        Gauss::new(-self.re, -self.im)
    }
}

fn fmt_q(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p` or `p/q` with a nonzero denominator.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<i128>().ok().map(Q::from_integer),
        Some((p, q)) => {
            let p = p.trim().parse::<i128>().ok()?;
            let q = q.trim().parse::<i128>().ok()?;
            if q == 0 {
                None
            } else {
                Some(Q::new(p, q))
            }
        }
    }
}

impl fmt::Display for Gauss {
    /// Prints as `( a/b + c/d i )`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "( {} + {} i )", fmt_q(&self.re), fmt_q(&self.im))
    }
}

impl FromStr for Gauss {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| format!("coefficient must be parenthesised: {s:?}"))?;
        let (re, im) = inner
            .split_once(" + ")
            .ok_or_else(|| format!("coefficient needs the form `a + b i`: {s:?}"))?;
        let im = im
            .trim()
            .strip_suffix('i')
            .ok_or_else(|| format!("imaginary part must end with `i`: {s:?}"))?;
        let re = parse_q(re).ok_or_else(|| format!("bad rational {re:?}"))?;
        let im = parse_q(im).ok_or_else(|| format!("bad rational {im:?}"))?;
        Ok(Gauss::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_powers_cycle() {
        assert_eq!(Gauss::i() * Gauss::i(), Gauss::from_int(-1));
        assert_eq!(Gauss::i_pow(5), Gauss::i());
        assert_eq!(Gauss::i_pow(-1), -Gauss::i());
    }

    #[test]
    fn text_round_trip() {
        let z = Gauss::new(Q::new(-3, 4), Q::new(5, 7));
        let s = z.to_string();
        assert_eq!(s, "( -3/4 + 5/7 i )");
        assert_eq!(s.parse::<Gauss>().unwrap(), z);
    }

    #[test]
    fn inverse_is_exact() {
        let z = Gauss::new(Q::new(1, 2), Q::new(-2, 3));
        assert_eq!(z * z.inv().unwrap(), Gauss::one());
        assert!(Gauss::zero().inv().is_none());
    }
}
