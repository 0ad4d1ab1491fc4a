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

//! Localized morphisms of a cocycle, tensor products and the permutation symmetry.

use std::sync::Arc;

use rayon::prelude::*;

use super::{Cocycle, CocycleError, Intertwiner, Provenance};
use crate::paulinet::PauliElement;
use crate::simplicial::{Path, Simplex};

/// `v A v*`, with a sign-flip shortcut when `v` is a single phased string.
pub fn conjugate_by(a: &PauliElement, v: &PauliElement) -> PauliElement {
    match v.as_monomial() {
        Some((c, s)) => {
            let norm = c * c.conj();
            let mut out = PauliElement::zero();
            for (t, coeff) in a.terms() {
                let sign = if s.commutes(t) { norm } else { -norm };
                out = out.add(&PauliElement::term(*coeff * sign, *t));
            }
            out
        }
        None => a.conjugate_by(v),
    }
}

/// `ρ(o)_a(A) = X(ã → o) A X(o → ã)` for the default `ã ⊥ a`.
pub fn rho(x: &Cocycle, o: usize, a: usize, value: &PauliElement) -> Result<PauliElement, CocycleError> {
    let at = x.frame().disjoint_of(a).ok_or_else(|| CocycleError::NoDisjoint(x.frame().poset().ids[a].clone()))?;
    rho_via(x, o, at, value)
}

/// `ρ(o)` computed through an explicit auxiliary element `at`.
pub fn rho_via(x: &Cocycle, o: usize, at: usize, value: &PauliElement) -> Result<PauliElement, CocycleError> {
    let v = x.transport(at, o)?;
    Ok(conjugate_by(value, &v))
}

/// `(X ⊗ Y)_b(λ) = X_b(λ) ρ(∂₁b)_{|b|}(Y_b(λ))` with `ρ` from `X`.
pub fn tensor(x: &Cocycle, y: &Cocycle) -> Result<Cocycle, CocycleError> {
    if !x.same_frame(y) {
        return Err(CocycleError::NetMismatch);
    }
    let f = x.frame();
    let ones = f.ones();
    let rows = (0..f.group_len())
        .map(|g| {
            ones.par_iter()
                .enumerate()
                .map(|(k, b)| Ok(x.stored(g, k).mul(&rho(x, b.from(), b.support(), y.stored(g, k))?)))
                .collect::<Result<Vec<_>, CocycleError>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Cocycle::from_values(f.clone(), rows, Provenance::Synthetic { note: "tensor product".into() })
}

/// `(t ⊗ s)_a = t_a ρ(a)_a(s_a)` with `ρ` from the source of `t`; lands in `(X⊗Z, Y⊗L)`.
pub fn tensor_arrows(t: &Intertwiner, s: &Intertwiner) -> Result<Intertwiner, CocycleError> {
    let x = t.source();
    let source = Arc::new(tensor(x, s.source())?);
    let target = Arc::new(tensor(t.target(), s.target())?);
    let n = x.frame().poset().len();
    let values = (0..n)
        .map(|a| Ok(t.value(a).mul(&rho(x, a, a, s.value(a))?)))
        .collect::<Result<Vec<_>, CocycleError>>()?;
    Intertwiner::new(source, target, values)
}

/// Pads `p` to `len` steps with degenerate 1-simplices at the front or the back.
pub fn pad(x: &Cocycle, p: &Path, len: usize, front: bool) -> Path {
    if p.len() >= len {
        return p.clone();
    }
    let f = x.frame();
    let at = if front { p.start() } else { p.end() };
    let fill = vec![f.ones()[at].clone(); len - p.len()];
    let steps: Vec<Simplex> = if front {
        fill.into_iter().chain(p.steps().iter().cloned()).collect()
    } else {
        p.steps().iter().cloned().chain(fill).collect()
    };
    Path::new(steps).expect("degenerate padding keeps the chain")
}

/// `(X × Y)_{p,q} = (X × Y)_{bₙ,dₙ} ⋯ (X × Y)_{b₁,d₁}`, padding the shorter path at its end.
pub fn extended_product(x: &Cocycle, y: &Cocycle, p: &Path, q: &Path) -> Result<PauliElement, CocycleError> {
    if !x.same_frame(y) {
        return Err(CocycleError::NetMismatch);
    }
    let len = p.len().max(q.len());
    let (p, q) = (pad(x, p, len, false), pad(x, q, len, false));
    let mut acc = PauliElement::identity();
    for (b, d) in p.steps().iter().zip(q.steps()) {
        let step = x.value(b, 0)?.mul(&rho(x, b.from(), d.support(), &y.value(d, 0)?)?);
        acc = step.mul(&acc);
    }
    Ok(acc)
}

/// `ε(X, Y)_a = (Y × X)*_{q,p} (X × Y)_{p,q}` for paths from `a` with disjoint ends.
pub fn epsilon_with(x: &Cocycle, y: &Cocycle, p: &Path, q: &Path) -> Result<PauliElement, CocycleError> {
    let poset = x.frame().poset();
    if p.start() != q.start() {
        return Err(CocycleError::InvalidPath("paths must start at the same element".into()));
    }
    if !poset.perp(p.end(), q.end()) {
        return Err(CocycleError::NoDisjointTargets(poset.ids[p.start()].clone()));
    }
    let xy = extended_product(x, y, p, q)?;
    let yx = extended_product(y, x, q, p)?;
    Ok(yx.adjoint().mul(&xy))
}

/// Default paths for `ε` at `a`: the trivial path and the canonical route to the default
/// disjoint element.
pub fn default_epsilon_paths(x: &Cocycle, a: usize) -> Result<(Path, Path), CocycleError> {
    let f = x.frame();
    let at = f.disjoint_of(a).ok_or_else(|| CocycleError::NoDisjointTargets(f.poset().ids[a].clone()))?;
    Ok((Path::trivial(a), f.route(a, at)?))
}

pub fn epsilon(x: &Cocycle, y: &Cocycle, a: usize) -> Result<PauliElement, CocycleError> {
    let (p, q) = default_epsilon_paths(x, a)?;
    epsilon_with(x, y, &p, &q)
}

/// `ε(X, Y)` at every element, as an arrow `(X⊗Y, Y⊗X)`.
pub fn epsilon_arrow(x: &Arc<Cocycle>, y: &Arc<Cocycle>) -> Result<Intertwiner, CocycleError> {
    let n = x.frame().poset().len();
    let values = (0..n).into_par_iter().map(|a| epsilon(x, y, a)).collect::<Result<Vec<_>, _>>()?;
    Intertwiner::new(Arc::new(tensor(x, y)?), Arc::new(tensor(y, x)?), values)
}

#[cfg(test)]
mod tests {
    use super::super::testnets::*;
    use super::super::*;
    use super::*;
    use crate::scalar::Gauss;

    fn boson() -> (Arc<Cocycle>, Vec<usize>) {
        let (frame, family) = small_grid();
        let sites = centre_sites(&family).unwrap();
        (Arc::new(charge_pair(frame, sites.clone(), Charge::Z, &Character::trivial(8)).unwrap()), sites)
    }

    #[test]
    fn rho_of_charge_pair_conjugates_by_the_charge() {
        let (x, sites) = boson();
        let f = x.frame();
        let p = f.poset();
        for o in 0..p.len() {
            for a in 0..p.len() {
                let alg = f.net().algebra(a);
                for s in alg.subspace.basis() {
                    let v = PauliElement::string(*s);
                    let got = rho(&x, o, a, &v).unwrap();
                    if p.perp(a, o) {
                        assert_eq!(got, v);
                    }
                    let z = PauliElement::string(crate::paulinet::PauliString::z_on(sites[o]));
                    assert_eq!(got, v.conjugate_by(&z));
                }
            }
        }
    }

    #[test]
    fn unit_object_is_neutral() {
        let (x, _) = boson();
        let i = Cocycle::identity(x.frame().clone());
        assert_eq!(tensor(&x, &i).unwrap().values(), x.values());
        assert_eq!(tensor(&i, &x).unwrap().values(), x.values());
    }

    #[test]
    fn padding_position_does_not_matter() {
        let (x, _) = boson();
        let f = x.frame();
        let p = f.route(0, f.poset().len() - 1).unwrap();
        let q = f.route(0, 4).unwrap();
        let (back, front) = (pad(&x, &q, p.len(), false), pad(&x, &q, p.len(), true));
        let i = Cocycle::identity(f.clone());
        let a = extended_product(&x, &x, &p, &back).unwrap();
        let b = extended_product(&x, &x, &p, &front).unwrap();
        assert_eq!(a, b);
        assert_eq!(extended_product(&x, &i, &p, &q).unwrap(), x.evaluate_path(&p).unwrap());
    }

    #[test]
    fn epsilon_of_bosons_is_one() {
        let (x, _) = boson();
        for a in 0..x.frame().poset().len() {
            assert_eq!(epsilon(&x, &x, a).unwrap(), PauliElement::identity());
        }
        let i = Arc::new(Cocycle::identity(x.frame().clone()));
        assert_eq!(epsilon(&i, &i, 0).unwrap(), PauliElement::identity());
    }

    #[test]
    fn epsilon_of_majoranas_is_minus_one() {
        let (frame, family) = chain();
        let x = charge_pair(frame, centre_sites(&family).unwrap(), Charge::Majorana, &Character::trivial(1)).unwrap();
        let e = epsilon(&x, &x, 0).unwrap();
        assert_eq!(e, PauliElement::scalar(-Gauss::one()));
    }
}
