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

//! Localized, transportable and covariant morphisms built from cocycles.

pub mod functors;

use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cocycle::conjugate::alternative_disjoint;
use crate::cocycle::tensor::conjugate_by;
use crate::cocycle::{Check, Cocycle, CocycleError, CocycleReport, Frame};
use crate::paulinet::{NetAlgebra, PauliElement, Subspace};

pub use functors::{functor_d_to_z, functor_z_to_d, phi, pole_change, round_trip, verify_delta, DeltaArrow, DeltaObject, Equivalence};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MorphismError {
    #[error("poset unsuitable: {axiom} fails at {element}")]
    PosetUnsuitable { axiom: String, element: String },
    #[error("no element is disjoint from all of {0}")]
    NoCommonDisjoint(String),
    #[error("operator is not in the algebra of {0}")]
    NotInAlgebra(String),
    #[error("morphism depends on the auxiliary choice: {0}")]
    ChoiceDependent(String),
    #[error("axiom check {check} fails: {witness}")]
    AxiomsFail { check: String, witness: String },
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
}

/// `E U(g)`: a local operator times the implementing unitary of a symmetry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covariant {
    pub elem: PauliElement,
    pub g: usize,
}

impl Covariant {
    pub fn u(g: usize) -> Self {
        Self { elem: PauliElement::identity(), g }
    }

    /// `(E U(g)) (F U(h)) = E α_g(F) U(gh)`.
    pub fn mul(&self, other: &Covariant, f: &Frame) -> Covariant {
        Covariant { elem: self.elem.mul(&f.alpha(self.g, &other.elem)), g: f.poset().table[self.g][other.g] }
    }

    /// `(E U(g))* = U(g)* E* = α_g⁻¹(E*) U(g⁻¹)`.
    pub fn adjoint(&self, f: &Frame) -> Covariant {
        Covariant { elem: f.alpha_inv(self.g, &self.elem.adjoint()), g: f.poset().inverse[self.g] }
    }
}

/// `w` commutes with every element of `alg`, checked on its string basis.
pub fn in_commutant(w: &PauliElement, alg: &NetAlgebra) -> bool {
    match w.as_monomial() {
        Some((_, s)) => alg.subspace.basis().iter().all(|b| s.commutes(b)),
        None => alg.subspace.basis().iter().all(|b| {
            let e = PauliElement::string(*b);
            w.mul(&e) == e.mul(w)
        }),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalizeOptions {
    /// Refuse posets with a disconnected causal complement instead of checking choice
    /// independence directly.
    pub strict: bool,
}

/// `ρ(o)` for one cocycle and localization region.
#[derive(Clone, Debug)]
pub struct LocalizedMorphism {
    cocycle: Arc<Cocycle>,
    o: usize,
    alternatives_checked: usize,
}

/// Up to four elements of the complement of `a`, spread over it, plus one per component.
fn spread_alternatives(x: &Cocycle, a: usize) -> Vec<usize> {
    let comp: Vec<usize> = x.frame().poset().complement_set(a).iter().collect();
    let mut out: BTreeSet<usize> = alternative_disjoint(x, a).into_iter().collect();
    if !comp.is_empty() {
        for k in 0..4 {
            out.insert(comp[k * (comp.len() - 1) / 3]);
        }
    }
    out.into_iter().collect()
}

/// Builds `ρ(o)` after checking that each `ρ(o)_a` is the same for several choices of `ã ⊥ a`.
pub fn localize(x: &Arc<Cocycle>, o: usize, opts: LocalizeOptions) -> Result<LocalizedMorphism, MorphismError> {
    let f = x.frame();
    let p = f.poset();
    if o >= p.len() {
        return Err(MorphismError::NotInAlgebra(format!("element index {o}")));
    }
    for a in 0..p.len() {
        if p.complement_set(a).is_empty() {
            return Err(MorphismError::PosetUnsuitable { axiom: "K4".into(), element: p.ids[a].clone() });
        }
        if opts.strict && p.components_within(p.complement_set(a)).len() > 1 {
            return Err(MorphismError::PosetUnsuitable { axiom: "K6".into(), element: p.ids[a].clone() });
        }
    }
    let checked = (0..p.len())
        .into_par_iter()
        .map(|a| -> Result<usize, MorphismError> {
            let at = f.disjoint_of(a).expect("complement is non-empty");
            let base = x.transport(at, o)?;
            let alts = spread_alternatives(x, a);
            for &alt in &alts {
                let other = x.transport(alt, o)?;
                if !in_commutant(&base.adjoint().mul(&other), f.net().algebra(a)) {
                    return Err(MorphismError::ChoiceDependent(format!(
                        "rho({})_{} through {} differs from the one through {}",
                        p.ids[o], p.ids[a], p.ids[alt], p.ids[at]
                    )));
                }
            }
            Ok(alts.len())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LocalizedMorphism { cocycle: x.clone(), o, alternatives_checked: checked.into_iter().sum() })
}

impl LocalizedMorphism {
    pub fn cocycle(&self) -> &Arc<Cocycle> {
        &self.cocycle
    }

    pub fn localization(&self) -> usize {
        self.o
    }

    pub fn alternatives_checked(&self) -> usize {
        self.alternatives_checked
    }

    /// `ρ(o)_a(A)` for `A ∈ A(a)`.
    pub fn apply(&self, a: usize, value: &PauliElement) -> Result<PauliElement, MorphismError> {
        let f = self.cocycle.frame();
        if !f.net().algebra(a).contains(value) {
            return Err(MorphismError::NotInAlgebra(f.poset().ids[a].clone()));
        }
        Ok(crate::cocycle::rho(&self.cocycle, self.o, a, value)?)
    }

    /// `ρ(o)_{a₁…aₙ}(A)` for `A` in the algebra generated by the `A(aᵢ)`, through a common
    /// disjoint element.
    pub fn apply_multi(&self, regions: &[usize], value: &PauliElement) -> Result<PauliElement, MorphismError> {
        let f = self.cocycle.frame();
        let p = f.poset();
        let names = || regions.iter().map(|a| p.ids[*a].as_str()).collect::<Vec<_>>().join(", ");
        let mut common = crate::bits::BitSet::full(p.len());
        let mut span = Subspace::zero();
        for &a in regions {
            common = common.intersect(p.complement_set(a));
            span = span.sum(&f.net().algebra(a).subspace);
        }
        if !value.strings().all(|s| span.contains(s)) {
            return Err(MorphismError::NotInAlgebra(names()));
        }
        let at = common.iter().min_by(|x, y| p.ids[*x].cmp(&p.ids[*y])).ok_or_else(|| MorphismError::NoCommonDisjoint(names()))?;
        Ok(crate::cocycle::rho_via(&self.cocycle, self.o, at, value)?)
    }

    /// `U^ρ_o(λ) = X(λo → o) U(λ) X_o(λ)`.
    pub fn u_rho(&self, g: usize) -> Result<Covariant, MorphismError> {
        covariance_op(&self.cocycle, self.o, g)
    }
}

pub fn covariance_op(x: &Cocycle, o: usize, g: usize) -> Result<Covariant, MorphismError> {
    let f = x.frame();
    let moved = f.poset().act(g, o);
    let t = x.transport(moved, o)?;
    Ok(Covariant { elem: t.mul(&f.alpha(g, x.evaluate_object(o, g))), g })
}

pub fn covariance_ops(rho: &LocalizedMorphism) -> Result<Vec<Covariant>, MorphismError> {
    (0..rho.cocycle.frame().group_len()).map(|g| rho.u_rho(g)).collect()
}

/// `X(o → ô)`, the charge transporter.
pub fn transport(x: &Cocycle, o: usize, target: usize) -> Result<PauliElement, MorphismError> {
    Ok(x.transport(o, target)?)
}

pub const TRANSPORT_INTERTWINING: &str = "transport-intertwining";

/// `v ρ(o)_a = σ(ô)_a v` on the string basis of every `A(a)`.
pub fn check_transport(rho: &LocalizedMorphism, sigma: &LocalizedMorphism, v: &PauliElement) -> Check {
    let x = &rho.cocycle;
    let f = x.frame();
    let p = f.poset();
    let n = p.len();
    let failure = (0..n).into_par_iter().find_map_first(|a| {
        let at = f.disjoint_of(a)?;
        let lhs = x.transport(at, rho.o).ok()?;
        let rhs = sigma.cocycle.transport(at, sigma.o).ok()?;
        let w = rhs.adjoint().mul(v).mul(&lhs);
        (!in_commutant(&w, f.net().algebra(a))).then(|| format!("a = {}", p.ids[a]))
    });
    Check::from_first_failure(TRANSPORT_INTERTWINING, n as u64, failure)
}

pub const LOCALIZATION: &str = "localization";
pub const STABILITY: &str = "stability";
pub const TRANSPORTABILITY: &str = "transportability";
pub const COVARIANCE_OF_RHO: &str = "cocycle-covariance-of-rho";
pub const GROUP_LAW: &str = "covariance-group-law";
pub const COVARIANCE_RELATION: &str = "covariance-relation";
pub const CONSISTENCY: &str = "consistency";
pub const TRANSPORT_LAW: &str = "transport-cocycle-law";

/// `V[o][a] = X(ã → o)` for the default `ã ⊥ a`: the unitary implementing `ρ(o)_a`.
fn implementers(x: &Cocycle) -> Result<Vec<Vec<PauliElement>>, MorphismError> {
    let f = x.frame();
    let p = f.poset();
    (0..p.len())
        .into_par_iter()
        .map(|o| {
            (0..p.len())
                .map(|a| {
                    let at = f.disjoint_of(a).ok_or_else(|| MorphismError::PosetUnsuitable { axiom: "K4".into(), element: p.ids[a].clone() })?;
                    Ok(x.transport(at, o)?)
                })
                .collect()
        })
        .collect()
}

fn first<T: Send + Sync, F>(items: Vec<T>, test: F) -> Option<String>
where
    F: Fn(&T) -> Option<String> + Sync + Send,
{
    items.par_iter().find_map_first(test)
}

/// The localization, stability, transport and covariance laws of `ρ` and `U^ρ` on the string
/// basis of every local algebra, for every localization region.
pub fn morphism_laws(x: &Cocycle) -> Result<CocycleReport, MorphismError> {
    let f = x.frame();
    let p = f.poset();
    let n = p.len();
    let g_len = f.group_len();
    let v = implementers(x)?;
    let alg = |a: usize| f.net().algebra(a);
    let mut checks = Vec::new();

    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|o| (0..n).map(move |a| (o, a))).collect();
    let disjoint: Vec<(usize, usize)> = pairs.iter().copied().filter(|&(o, a)| p.perp(o, a)).collect();
    let count = disjoint.len();
    let fail = first(disjoint, |&(o, a)| (!in_commutant(&v[o][a], alg(a))).then(|| format!("o = {}, a = {}", p.ids[o], p.ids[a])));
    checks.push(Check::from_first_failure(LOCALIZATION, count as u64, fail));

    let nested: Vec<(usize, usize)> = pairs.iter().copied().filter(|&(o, a)| p.leq(o, a)).collect();
    let count = nested.len();
    let fail = first(nested, |&(o, a)| {
        alg(a).subspace.basis().iter().find_map(|s| {
            let image = conjugate_by(&PauliElement::string(*s), &v[o][a]);
            (!alg(a).contains(&image)).then(|| format!("o = {}, o~ = {}, A = {s}", p.ids[o], p.ids[a]))
        })
    });
    checks.push(Check::from_first_failure(STABILITY, count as u64, fail));

    let triples: Vec<(usize, usize)> = pairs.clone();
    let fail = first(triples, |&(o, target)| {
        let t = x.transport(o, target).ok()?;
        (0..n).find_map(|a| {
            let w = v[target][a].adjoint().mul(&t).mul(&v[o][a]);
            (!in_commutant(&w, alg(a))).then(|| format!("o = {}, o^ = {}, a = {}", p.ids[o], p.ids[target], p.ids[a]))
        })
    });
    checks.push(Check::from_first_failure(TRANSPORTABILITY, (n * n * n) as u64, fail));

    let ones: Vec<usize> = (0..f.ones().len()).collect();
    let fail = first(ones, |&k| {
        let b = &f.ones()[k];
        (0..g_len).find_map(|l| {
            let xb = x.stored(l, k);
            let to = p.act(l, b.to());
            (0..n).find_map(|a| {
                let moved = f.alpha_inv(l, &v[to][p.act(l, a)]);
                let w = xb.mul(&v[b.from()][a]).adjoint().mul(&moved);
                (!in_commutant(&w, alg(a))).then(|| format!("b = {}, lambda = {}, a = {}", f.simplex_name(b), p.group[l], p.ids[a]))
            })
        })
    });
    checks.push(Check::from_first_failure(COVARIANCE_OF_RHO, (f.ones().len() * g_len * n) as u64, fail));

    let ops: Vec<Vec<Covariant>> = (0..n)
        .into_par_iter()
        .map(|o| (0..g_len).map(|g| covariance_op(x, o, g)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let objs: Vec<usize> = (0..n).collect();
    let fail = first(objs.clone(), |&o| {
        if !ops[o].iter().all(|u| u.elem.is_unitary()) {
            return Some(format!("o = {}: non-unitary operator", p.ids[o]));
        }
        (0..g_len).find_map(|l| {
            (0..g_len).find_map(|s| {
                let prod = ops[o][l].mul(&ops[o][s], f);
                (prod != ops[o][p.table[l][s]]).then(|| format!("o = {}, lambda = {}, sigma = {}", p.ids[o], p.group[l], p.group[s]))
            })
        })
    });
    checks.push(Check::from_first_failure(GROUP_LAW, (n * g_len * g_len) as u64, fail));

    let fail = first(pairs.clone(), |&(o, a)| {
        (0..g_len).find_map(|l| {
            let la = p.act(l, a);
            let w = v[o][la].adjoint().mul(&ops[o][l].elem).mul(&f.alpha(l, &v[o][a]));
            (!in_commutant(&w, alg(la))).then(|| format!("o = {}, a = {}, lambda = {}", p.ids[o], p.ids[a], p.group[l]))
        })
    });
    checks.push(Check::from_first_failure(COVARIANCE_RELATION, (n * n * g_len) as u64, fail));

    let fail = first(pairs.clone(), |&(o, a)| {
        p.up(a).iter().find_map(|big| {
            let w = v[o][big].adjoint().mul(&v[o][a]);
            (!in_commutant(&w, alg(a))).then(|| format!("o = {}, a = {}, a' = {}", p.ids[o], p.ids[a], p.ids[big]))
        })
    });
    let nested_count: usize = (0..n).map(|a| p.up(a).count()).sum::<usize>() * n;
    checks.push(Check::from_first_failure(CONSISTENCY, nested_count as u64, fail));

    let fail = first(objs, |&o| {
        (0..n).find_map(|m| {
            let left = x.transport(m, o).ok()?;
            (0..n).find_map(|t| {
                let right = x.transport(t, m).ok()?;
                let direct = x.transport(t, o).ok()?;
                (left.mul(&right) != direct).then(|| format!("{} <- {} <- {}", p.ids[o], p.ids[m], p.ids[t]))
            })
        })
    });
    checks.push(Check::from_first_failure(TRANSPORT_LAW, (n * n * n) as u64, fail));
    Ok(CocycleReport { checks })
}

/// Group law and covariance relation for one localized morphism.
pub fn verify_covariance(rho: &LocalizedMorphism) -> Result<CocycleReport, MorphismError> {
    let x = &rho.cocycle;
    let f = x.frame();
    let p = f.poset();
    let (n, g_len, o) = (p.len(), f.group_len(), rho.o);
    let ops = covariance_ops(rho)?;
    let mut fail = None;
    'outer: for l in 0..g_len {
        for s in 0..g_len {
            if ops[l].mul(&ops[s], f) != ops[p.table[l][s]] {
                fail = Some(format!("lambda = {}, sigma = {}", p.group[l], p.group[s]));
                break 'outer;
            }
        }
    }
    let group = Check::from_first_failure(GROUP_LAW, (g_len * g_len) as u64, fail);
    let fail = (0..n).into_par_iter().find_map_first(|a| {
        (0..g_len).find_map(|l| {
            let la = p.act(l, a);
            let va = x.transport(f.disjoint_of(a)?, o).ok()?;
            let vla = x.transport(f.disjoint_of(la)?, o).ok()?;
            let w = vla.adjoint().mul(&ops[l].elem).mul(&f.alpha(l, &va));
            (!in_commutant(&w, f.net().algebra(la))).then(|| format!("a = {}, lambda = {}", p.ids[a], p.group[l]))
        })
    });
    let relation = Check::from_first_failure(COVARIANCE_RELATION, (n * g_len) as u64, fail);
    Ok(CocycleReport { checks: vec![group, relation] })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::cocycle::*;
    use crate::paulinet::{Net, NetModel, PauliString};
    use crate::poset::build_poset;
    use crate::regions::{sample_family, Action, FamilyParams, RegionFamily};
    use crate::scalar::Gauss;

    pub(crate) fn grid() -> (Arc<Frame>, RegionFamily) {
        let params: FamilyParams =
            serde_json::from_str(r#"{"kind":"slice-grid","extent":[1,1],"radii":["0","1"],"group":"dihedral"}"#).unwrap();
        let family = sample_family(&params).unwrap();
        let poset = build_poset(&family).unwrap();
        let net = Net::from_family(&family, poset, NetModel::EvenZ2).unwrap();
        (Arc::new(Frame::new(net)), family)
    }

    fn charge(kind: CharacterKind) -> (Arc<Cocycle>, Vec<usize>) {
        let (frame, family) = grid();
        let actions: Vec<Action> = family.symmetries.iter().map(|s| s.action.clone()).collect();
        let chi = Character::from_actions(kind, &actions).unwrap();
        let sites = centre_sites(&family).unwrap();
        (Arc::new(charge_pair(frame, sites.clone(), Charge::Z, &chi).unwrap()), sites)
    }

    fn z(s: usize) -> PauliElement {
        PauliElement::string(PauliString::z_on(s))
    }

    #[test]
    fn identity_cocycle_gives_identity_morphism() {
        let (frame, _) = grid();
        let i = Arc::new(Cocycle::identity(frame.clone()));
        let rho = localize(&i, 0, LocalizeOptions::default()).unwrap();
        for a in 0..frame.poset().len() {
            for s in frame.net().algebra(a).subspace.basis() {
                let e = PauliElement::string(*s);
                assert_eq!(rho.apply(a, &e).unwrap(), e);
            }
        }
        for g in 0..8 {
            assert_eq!(rho.u_rho(g).unwrap(), Covariant::u(g));
        }
    }

    #[test]
    fn charge_morphism_conjugates_by_the_charge() {
        let (x, sites) = charge(CharacterKind::Trivial);
        let p = x.frame().poset();
        for o in [0, 4, p.len() - 1] {
            let rho = localize(&x, o, LocalizeOptions::default()).unwrap();
            assert!(rho.alternatives_checked() >= 3 * p.len() / 2);
            for a in 0..p.len() {
                for s in x.frame().net().algebra(a).subspace.basis() {
                    let e = PauliElement::string(*s);
                    let got = rho.apply(a, &e).unwrap();
                    assert_eq!(got, e.conjugate_by(&z(sites[o])));
                    if p.perp(a, o) {
                        assert_eq!(got, e);
                    }
                }
            }
        }
    }

    #[test]
    fn strict_mode_refuses_disconnected_complements() {
        let (x, _) = charge(CharacterKind::Trivial);
        let p = x.frame().poset();
        let disconnected = (0..p.len()).any(|a| p.components_within(p.complement_set(a)).len() > 1);
        let r = localize(&x, 0, LocalizeOptions { strict: true });
        assert_eq!(r.is_err(), disconnected);
    }

    #[test]
    fn twisted_charge_covariance_operators() {
        let (x, sites) = charge(CharacterKind::Determinant);
        let f = x.frame();
        let p = f.poset();
        let chi = Character::from_actions(CharacterKind::Determinant, &[]).unwrap();
        assert!(chi.values.is_empty());
        for o in 0..p.len() {
            let rho = localize(&x, o, LocalizeOptions::default()).unwrap();
            let ops = covariance_ops(&rho).unwrap();
            for (g, u) in ops.iter().enumerate() {
                let c = x.stored(g, o).as_scalar().unwrap();
                let expect = z(sites[o]).mul(&z(sites[p.act(g, o)])).scale(c);
                assert_eq!(u.elem, expect);
                assert_eq!(u.g, g);
            }
            let r = verify_covariance(&rho).unwrap();
            assert!(r.passed(), "{:?}", r.first_failure());
        }
    }

    #[test]
    fn laws_hold_for_charges() {
        for kind in [CharacterKind::Trivial, CharacterKind::Determinant] {
            let (x, _) = charge(kind);
            let r = morphism_laws(&x).unwrap();
            assert!(r.passed(), "{:?}", r.first_failure());
        }
    }

    #[test]
    fn fault_in_an_object_value_breaks_the_group_law() {
        let (x, _) = charge(CharacterKind::Trivial);
        let o = 2;
        let bad = Arc::new(x.with_value(3, o, x.stored(3, o).scale(Gauss::i())));
        let rho = localize(&bad, o, LocalizeOptions::default()).unwrap();
        let r = verify_covariance(&rho).unwrap();
        let c = r.check(GROUP_LAW).unwrap();
        assert!(!c.holds());
        assert!(c.witness.as_ref().unwrap().contains("lambda"));
    }

    #[test]
    fn transports_intertwine_and_compose() {
        let (x, sites) = charge(CharacterKind::Trivial);
        let p = x.frame().poset();
        let (o, target, third) = (0, p.len() - 1, 5);
        let v = transport(&x, o, target).unwrap();
        assert_eq!(v, z(sites[target]).mul(&z(sites[o])));
        assert_eq!(transport(&x, o, o).unwrap(), PauliElement::identity());
        let rho = localize(&x, o, LocalizeOptions::default()).unwrap();
        let sigma = localize(&x, target, LocalizeOptions::default()).unwrap();
        assert!(check_transport(&rho, &sigma, &v).holds());
        assert!(!check_transport(&rho, &sigma, &PauliElement::identity()).holds());
        let composed = transport(&x, third, target).unwrap().mul(&transport(&x, o, third).unwrap());
        assert_eq!(composed, v);
    }

    #[test]
    fn multi_region_application() {
        let (x, sites) = charge(CharacterKind::Trivial);
        let f = x.frame();
        let p = f.poset();
        let o = 0;
        let rho = localize(&x, o, LocalizeOptions::default()).unwrap();
        let (a1, a2) = (1, 2);
        let e = PauliElement::string(f.net().algebra(a1).subspace.basis()[0]).mul(&PauliElement::string(f.net().algebra(a2).subspace.basis()[0]));
        let got = rho.apply_multi(&[a1, a2], &e).unwrap();
        assert_eq!(got, e.conjugate_by(&z(sites[o])));
        let all: Vec<usize> = (0..p.len()).collect();
        assert!(matches!(rho.apply_multi(&all, &PauliElement::identity()), Err(MorphismError::NoCommonDisjoint(_))));
    }

    #[test]
    fn nested_chain_collapses_to_one_map() {
        let (x, _) = charge(CharacterKind::Trivial);
        let f = x.frame();
        let p = f.poset();
        let rho = localize(&x, 0, LocalizeOptions::default()).unwrap();
        let small = (0..p.len()).find(|&a| p.properly_above(a).count() > 0).unwrap();
        let chain: Vec<usize> = std::iter::once(small).chain(p.properly_above(small).iter()).collect();
        for s in f.net().algebra(small).subspace.basis() {
            let e = PauliElement::string(*s);
            let images: Vec<_> = chain.iter().map(|a| rho.apply(*a, &e).unwrap()).collect();
            assert!(images.windows(2).all(|w| w[0] == w[1]));
        }
    }
}
