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

//! Fields of transportable covariant morphisms and the functors to and from cocycles.

use std::sync::Arc;

use rayon::prelude::*;

use super::{covariance_op, in_commutant, Covariant, MorphismError};
use crate::cocycle::{arrow_space, Check, CheckVerdict, Cocycle, CocycleReport, Frame, Intertwiner, Provenance};
use crate::paulinet::PauliElement;

/// A field `o ↦ ρ^o` given by its transports `v[x][y] = v_{x,y}` with `v_{x,y} ρ^y = ρ^x v_{x,y}`,
/// and the covariance operators `u[o][λ] = U^ρ_o(λ)`.
#[derive(Clone, Debug)]
pub struct DeltaObject {
    frame: Arc<Frame>,
    pub v: Vec<Vec<PauliElement>>,
    pub u: Vec<Vec<Covariant>>,
}

pub const DELTA_UNITARY: &str = "delta-unitary";
pub const DELTA_TRANSPORT_LAW: &str = "delta-transport-cocycle-law";
pub const DELTA_LOCALIZATION: &str = "delta-localization";
pub const DELTA_INTERTWINING: &str = "delta-transport-intertwining";
pub const DELTA_GROUP_LAW: &str = "delta-group-law";
pub const DELTA_COVARIANCE: &str = "delta-covariance-relation";
pub const DELTA_ARROW: &str = "delta-arrow-relation";
pub const DELTA_NATURALITY: &str = "delta-arrow-naturality";

impl DeltaObject {
    pub fn new(frame: Arc<Frame>, v: Vec<Vec<PauliElement>>, u: Vec<Vec<Covariant>>) -> Result<Self, MorphismError> {
        let n = frame.poset().len();
        let g_len = frame.group_len();
        if v.len() != n || v.iter().any(|r| r.len() != n) || u.len() != n || u.iter().any(|r| r.len() != g_len) {
            return Err(MorphismError::Cocycle(crate::cocycle::CocycleError::ShapeMismatch(format!(
                "expected {n}x{n} transports and {n}x{g_len} covariance operators"
            ))));
        }
        Ok(Self { frame, v, u })
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    fn aux(&self, a: usize) -> Result<usize, MorphismError> {
        self.frame
            .disjoint_of(a)
            .ok_or_else(|| MorphismError::PosetUnsuitable { axiom: "K4".into(), element: self.frame.poset().ids[a].clone() })
    }

    /// `ρ^o_a(A) = v_{o,ã} A v_{ã,o}`.
    pub fn rho(&self, o: usize, a: usize, value: &PauliElement) -> Result<PauliElement, MorphismError> {
        let at = self.aux(a)?;
        Ok(self.v[o][at].mul(value).mul(&self.v[at][o]))
    }
}

fn check_or_unknown(name: &str, instances: u64, ready: bool, run: impl FnOnce() -> Option<String>) -> Check {
    if ready {
        Check::from_first_failure(name, instances, run())
    } else {
        Check { check: name.to_string(), instances_checked: 0, verdict: CheckVerdict::Unknown, witness: Some("needs unitary transports obeying the cocycle law".into()) }
    }
}

/// The defining relations of an object, exactly on the string basis of every local algebra.
/// Checks after the transport law assume it and report unknown when it fails.
pub fn verify_delta(obj: &DeltaObject) -> CocycleReport {
    let f = &obj.frame;
    let p = f.poset();
    let n = p.len();
    let g_len = f.group_len();
    let alg = |a: usize| f.net().algebra(a);
    let objs: Vec<usize> = (0..n).collect();
    let mut checks = Vec::new();

    let fail = objs.par_iter().find_map_first(|&x| {
        (0..n).find_map(|y| (!obj.v[x][y].is_unitary()).then(|| format!("v({}, {}) = {}", p.ids[x], p.ids[y], obj.v[x][y])))
    });
    checks.push(Check::from_first_failure(DELTA_UNITARY, (n * n) as u64, fail));

    let fail = objs.par_iter().find_map_first(|&x| {
        (0..n).find_map(|m| {
            (0..n).find_map(|y| {
                (obj.v[x][m].mul(&obj.v[m][y]) != obj.v[x][y]).then(|| format!("v({0}, {1}) v({1}, {2}) != v({0}, {2})", p.ids[x], p.ids[m], p.ids[y]))
            })
        })
    });
    checks.push(Check::from_first_failure(DELTA_TRANSPORT_LAW, (n * n * n) as u64, fail));
    let ready = checks.iter().all(Check::holds);
    let aux: Vec<Option<usize>> = (0..n).map(|a| f.disjoint_of(a)).collect();
    let missing = |a: usize| format!("no element is disjoint from {}", p.ids[a]);

    checks.push(check_or_unknown(DELTA_LOCALIZATION, (n * n) as u64, ready, || {
        objs.par_iter().find_map_first(|&o| {
            (0..n).filter(|&a| p.perp(o, a)).find_map(|a| {
                let Some(at) = aux[a] else { return Some(missing(a)) };
                (!in_commutant(&obj.v[o][at], alg(a))).then(|| format!("o = {}, a = {}", p.ids[o], p.ids[a]))
            })
        })
    }));

    checks.push(check_or_unknown(DELTA_INTERTWINING, (n * n * n) as u64, ready, || {
        objs.par_iter().find_map_first(|&x| {
            (0..n).find_map(|y| {
                (0..n).find_map(|a| {
                    let Some(at) = aux[a] else { return Some(missing(a)) };
                    let w = obj.v[x][at].adjoint().mul(&obj.v[x][y]).mul(&obj.v[y][at]);
                    (!in_commutant(&w, alg(a))).then(|| format!("x = {}, y = {}, a = {}", p.ids[x], p.ids[y], p.ids[a]))
                })
            })
        })
    }));

    let fail = objs.par_iter().find_map_first(|&o| {
        if let Some(l) = (0..g_len).find(|&l| obj.u[o][l].g != l || !obj.u[o][l].elem.is_unitary()) {
            return Some(format!("o = {}: operator for {} is not a unitary times U({})", p.ids[o], p.group[l], p.group[l]));
        }
        (0..g_len).find_map(|l| {
            (0..g_len).find_map(|s| {
                (obj.u[o][l].mul(&obj.u[o][s], f) != obj.u[o][p.table[l][s]])
                    .then(|| format!("o = {}, lambda = {}, sigma = {}", p.ids[o], p.group[l], p.group[s]))
            })
        })
    });
    checks.push(Check::from_first_failure(DELTA_GROUP_LAW, (n * g_len * g_len) as u64, fail));
    let ready = checks.iter().all(Check::holds);

    checks.push(check_or_unknown(DELTA_COVARIANCE, (n * n * g_len) as u64, ready, || {
        objs.par_iter().find_map_first(|&o| {
            (0..n).find_map(|a| {
                (0..g_len).find_map(|l| {
                    let la = p.act(l, a);
                    let (Some(at), Some(lat)) = (aux[a], aux[la]) else { return Some(missing(a)) };
                    let w = obj.v[o][lat].adjoint().mul(&obj.u[o][l].elem).mul(&f.alpha(l, &obj.v[o][at]));
                    (!in_commutant(&w, alg(la))).then(|| format!("o = {}, a = {}, lambda = {}", p.ids[o], p.ids[a], p.group[l]))
                })
            })
        })
    }));
    CocycleReport { checks }
}

/// A field `o ↦ t_o` between two objects.
#[derive(Clone, Debug)]
pub struct DeltaArrow {
    pub source: Arc<DeltaObject>,
    pub target: Arc<DeltaObject>,
    pub values: Vec<PauliElement>,
}

impl DeltaArrow {
    /// The arrow map from cocycles: the same components.
    pub fn from_intertwiner(t: &Intertwiner, source: Arc<DeltaObject>, target: Arc<DeltaObject>) -> Self {
        Self { source, target, values: t.values().to_vec() }
    }

    /// `t_o ρ^o_a = γ^o_a t_o`, `t_o U^ρ_o = U^γ_o t_o` and `t_x v^ρ_{x,y} = v^γ_{x,y} t_y`.
    pub fn verify(&self) -> CocycleReport {
        let (rho, gamma) = (&self.source, &self.target);
        let f = &rho.frame;
        let p = f.poset();
        let n = p.len();
        let g_len = f.group_len();
        let t = &self.values;
        let objs: Vec<usize> = (0..n).collect();
        let fail = objs.par_iter().find_map_first(|&o| {
            let local = (0..n).find_map(|a| {
                f.net().algebra(a).subspace.basis().iter().find_map(|s| {
                    let e = PauliElement::string(*s);
                    let lhs = t[o].mul(&rho.rho(o, a, &e).ok()?);
                    let rhs = gamma.rho(o, a, &e).ok()?.mul(&t[o]);
                    (lhs != rhs).then(|| format!("o = {}, a = {}, A = {s}", p.ids[o], p.ids[a]))
                })
            });
            local.or_else(|| {
                (0..g_len).find_map(|l| {
                    let lhs = t[o].mul(&rho.u[o][l].elem);
                    let rhs = gamma.u[o][l].elem.mul(&f.alpha(l, &t[o]));
                    (lhs != rhs || rho.u[o][l].g != gamma.u[o][l].g).then(|| format!("o = {}, lambda = {}", p.ids[o], p.group[l]))
                })
            })
        });
        let relation = Check::from_first_failure(DELTA_ARROW, (n * n + n * g_len) as u64, fail);
        let fail = objs.par_iter().find_map_first(|&x| {
            (0..n).find_map(|y| {
                (t[x].mul(&rho.v[x][y]) != gamma.v[x][y].mul(&t[y])).then(|| format!("x = {}, y = {}", p.ids[x], p.ids[y]))
            })
        });
        let natural = Check::from_first_failure(DELTA_NATURALITY, (n * n) as u64, fail);
        CocycleReport { checks: vec![relation, natural] }
    }

    pub fn compose(&self, s: &DeltaArrow) -> DeltaArrow {
        DeltaArrow { source: s.source.clone(), target: self.target.clone(), values: self.values.iter().zip(&s.values).map(|(a, b)| a.mul(b)).collect() }
    }
}

/// Cocycles to fields: `v_{x,y} = X(y → x)` and `U^ρ_o(λ) = X(λo → o) U(λ) X_o(λ)`.
pub fn functor_z_to_d(x: &Cocycle) -> Result<DeltaObject, MorphismError> {
    let f = x.frame();
    let n = f.poset().len();
    let v = (0..n)
        .into_par_iter()
        .map(|to| (0..n).map(|from| Ok(x.transport(from, to)?)).collect::<Result<Vec<_>, MorphismError>>())
        .collect::<Result<Vec<_>, _>>()?;
    let u = (0..n)
        .into_par_iter()
        .map(|o| (0..f.group_len()).map(|g| covariance_op(x, o, g)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    DeltaObject::new(f.clone(), v, u)
}

/// Fields to cocycles with pole `a`: `X_b(λ) = U(λ)* v_{λ∂₀b,a} U^ρ_a(λ) v_{a,∂₁b}`, which is
/// `α_λ⁻¹(v_{λ∂₀b,a} E) v_{a,∂₁b}` for `U^ρ_a(λ) = E U(λ)`.
pub fn functor_d_to_z(obj: &DeltaObject, pole: usize) -> Result<Cocycle, MorphismError> {
    let f = &obj.frame;
    let p = f.poset();
    if pole >= p.len() {
        return Err(MorphismError::NotInAlgebra(format!("pole index {pole}")));
    }
    if let Some(l) = (0..f.group_len()).find(|&l| obj.u[pole][l].g != l) {
        return Err(MorphismError::AxiomsFail { check: DELTA_GROUP_LAW.into(), witness: format!("operator at the pole for {} has the wrong symmetry", p.group[l]) });
    }
    let ones = f.ones();
    let rows = (0..f.group_len())
        .map(|l| {
            let e = &obj.u[pole][l].elem;
            ones.par_iter()
                .map(|b| f.alpha_inv(l, &obj.v[p.act(l, b.to())][pole].mul(e)).mul(&obj.v[pole][b.from()]))
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(Cocycle::from_values(f.clone(), rows, Provenance::PoleConstructed { pole: p.ids[pole].clone() })?)
}

/// Arrow map towards cocycles: `φ(t)_o = v^γ_{o,a} t_a v^ρ_{a,o}`.
pub fn phi(t: &DeltaArrow, pole: usize, source: Arc<Cocycle>, target: Arc<Cocycle>) -> Result<Intertwiner, MorphismError> {
    let n = t.values.len();
    let values = (0..n).map(|o| t.target.v[o][pole].mul(&t.values[pole]).mul(&t.source.v[pole][o])).collect();
    Ok(Intertwiner::new(source, target, values)?)
}

/// A unitary arrow between two cocycles, with its verification.
#[derive(Clone, Debug)]
pub struct Equivalence {
    pub cocycle: Arc<Cocycle>,
    pub unitary: Intertwiner,
    /// The two cocycles have the same values.
    pub identical: bool,
    pub check: Check,
}

fn equivalence(x: &Arc<Cocycle>, y: Arc<Cocycle>) -> Result<Equivalence, MorphismError> {
    let space = arrow_space(x, &y)?;
    let unitary = space.unitary().cloned().ok_or_else(|| MorphismError::AxiomsFail {
        check: "unitary-equivalence".into(),
        witness: format!("arrow space of dimension {} has no unitary element", space.dim()),
    })?;
    let check = unitary.verify();
    Ok(Equivalence { identical: x.values() == y.values(), cocycle: y, unitary, check })
}

/// `X ↦ F_a(G(X))` together with a unitary arrow back to `X`.
pub fn round_trip(x: &Arc<Cocycle>, pole: usize) -> Result<Equivalence, MorphismError> {
    let obj = functor_z_to_d(x)?;
    let back = Arc::new(functor_d_to_z(&obj, pole)?);
    equivalence(x, back)
}

/// The cocycles of one object built from two poles, and a unitary arrow between them.
pub fn pole_change(obj: &DeltaObject, first: usize, second: usize) -> Result<Equivalence, MorphismError> {
    let x = Arc::new(functor_d_to_z(obj, first)?);
    let y = Arc::new(functor_d_to_z(obj, second)?);
    equivalence(&x, y)
}

#[cfg(test)]
mod tests {
    use super::super::tests::grid;
    use super::*;
    use crate::cocycle::*;
    use crate::regions::Action;
    use crate::scalar::Gauss;

    fn charge(kind: CharacterKind) -> Arc<Cocycle> {
        let (frame, family) = grid();
        let actions: Vec<Action> = family.symmetries.iter().map(|s| s.action.clone()).collect();
        let chi = Character::from_actions(kind, &actions).unwrap();
        Arc::new(charge_pair(frame, centre_sites(&family).unwrap(), Charge::Z, &chi).unwrap())
    }

    #[test]
    fn images_of_cocycles_satisfy_the_relations() {
        for kind in [CharacterKind::Trivial, CharacterKind::ReflectionSign] {
            let x = charge(kind);
            let r = verify_delta(&functor_z_to_d(&x).unwrap());
            assert!(r.passed(), "{:?}", r.first_failure());
        }
    }

    #[test]
    fn broken_transport_law_is_caught() {
        let x = charge(CharacterKind::Trivial);
        let mut obj = functor_z_to_d(&x).unwrap();
        obj.v[0][1] = obj.v[0][1].scale(Gauss::i());
        let r = verify_delta(&obj);
        assert!(!r.check(DELTA_TRANSPORT_LAW).unwrap().holds());
        assert_eq!(r.check(DELTA_COVARIANCE).unwrap().verdict, CheckVerdict::Unknown);
    }

    #[test]
    fn round_trip_returns_the_same_cocycle_for_every_pole() {
        let x = charge(CharacterKind::Determinant);
        for pole in [0, 3, x.frame().poset().len() - 1] {
            let eq = round_trip(&x, pole).unwrap();
            assert!(eq.identical);
            assert!(eq.check.holds());
            assert!(verify_cocycle(&eq.cocycle, &VerifyOptions::seeded(1)).passed());
        }
    }

    #[test]
    fn pole_change_is_a_unitary_equivalence() {
        let x = charge(CharacterKind::Trivial);
        let mut obj = functor_z_to_d(&x).unwrap();
        // gauge the transports by a field of local phases: still an object, no longer a Z image
        let n = obj.v.len();
        let w: Vec<PauliElement> = (0..n).map(|o| PauliElement::scalar(Gauss::i_pow(o as i64))).collect();
        for a in 0..n {
            for b in 0..n {
                obj.v[a][b] = w[a].mul(&obj.v[a][b]).mul(&w[b].adjoint());
            }
        }
        assert!(verify_delta(&obj).passed());
        let eq = pole_change(&obj, 0, n - 1).unwrap();
        assert!(eq.check.holds());
        assert!(eq.unitary.is_unitary());
    }

    #[test]
    fn arrow_maps_are_functorial() {
        let x = charge(CharacterKind::Trivial);
        let obj = Arc::new(functor_z_to_d(&x).unwrap());
        let one = Intertwiner::identity(x.clone());
        let t = DeltaArrow::from_intertwiner(&one, obj.clone(), obj.clone());
        assert!(t.verify().passed());
        let minus = Intertwiner::scalar(x.clone(), x.clone(), -Gauss::one()).unwrap();
        let s = DeltaArrow::from_intertwiner(&minus, obj.clone(), obj.clone());
        let composed = s.compose(&s);
        assert!(composed.values.iter().all(|v| *v == PauliElement::identity()));
        let back = Arc::new(functor_d_to_z(&obj, 2).unwrap());
        let image = phi(&t, 2, back.clone(), back.clone()).unwrap();
        assert!(image.is_identity());
        let image = phi(&s, 2, back.clone(), back.clone()).unwrap();
        assert!(image.verify().holds());
        assert_eq!(image.as_scalar(), Some(-Gauss::one()));
    }

    #[test]
    fn non_arrows_are_rejected() {
        let x = charge(CharacterKind::Trivial);
        let obj = Arc::new(functor_z_to_d(&x).unwrap());
        let n = obj.v.len();
        let mut values = vec![PauliElement::identity(); n];
        values[0] = PauliElement::scalar(-Gauss::one());
        let t = DeltaArrow { source: obj.clone(), target: obj, values };
        let r = t.verify();
        assert!(r.check(DELTA_ARROW).unwrap().holds());
        assert!(!r.check(DELTA_NATURALITY).unwrap().holds());
    }
}
