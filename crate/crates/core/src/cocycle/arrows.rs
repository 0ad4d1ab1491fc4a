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

//! Intertwiners between cocycles, exact arrow spaces, subobjects and direct sums.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use rayon::prelude::*;

use super::verify::Check;
use super::{Cocycle, CocycleError, Provenance};
use crate::paulinet::{PauliElement, PauliString};
use crate::scalar::Gauss;

/// A field `a ↦ t_a ∈ A(a)` meant to satisfy `α_λ⁻¹(t_{λ∂₀b}) X_b(λ) = Y_b(λ) t_{∂₁b}`.
#[derive(Clone, Debug)]
pub struct Intertwiner {
    source: Arc<Cocycle>,
    target: Arc<Cocycle>,
    values: Vec<PauliElement>,
}

pub const INTERTWINER: &str = "intertwiner-relation";

impl Intertwiner {
    pub fn new(source: Arc<Cocycle>, target: Arc<Cocycle>, values: Vec<PauliElement>) -> Result<Self, CocycleError> {
        if !source.same_frame(&target) {
            return Err(CocycleError::NetMismatch);
        }
        if values.len() != source.frame().poset().len() {
            return Err(CocycleError::ShapeMismatch(format!("{} components for {} elements", values.len(), source.frame().poset().len())));
        }
        Ok(Self { source, target, values })
    }

    /// `1_X`.
    pub fn identity(x: Arc<Cocycle>) -> Self {
        let n = x.frame().poset().len();
        Self { source: x.clone(), target: x, values: vec![PauliElement::identity(); n] }
    }

    /// The same scalar at every element.
    pub fn scalar(source: Arc<Cocycle>, target: Arc<Cocycle>, c: Gauss) -> Result<Self, CocycleError> {
        let n = source.frame().poset().len();
        Self::new(source, target, vec![PauliElement::scalar(c); n])
    }

    pub fn source(&self) -> &Arc<Cocycle> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Cocycle> {
        &self.target
    }

    pub fn value(&self, a: usize) -> &PauliElement {
        &self.values[a]
    }

    pub fn values(&self) -> &[PauliElement] {
        &self.values
    }

    /// `(t · s)_a = t_a s_a` for `s ∈ (X, Y)` and `t = self ∈ (Y, Z)`.
    pub fn compose(&self, s: &Intertwiner) -> Result<Intertwiner, CocycleError> {
        if *s.target != *self.source {
            return Err(CocycleError::ShapeMismatch("target of the first arrow is not the source of the second".into()));
        }
        let values = self.values.iter().zip(&s.values).map(|(a, b)| a.mul(b)).collect();
        Self::new(s.source.clone(), self.target.clone(), values)
    }

    /// `(t*)_a = t_a*`, an arrow in the reverse direction.
    pub fn adjoint(&self) -> Intertwiner {
        Self { source: self.target.clone(), target: self.source.clone(), values: self.values.iter().map(PauliElement::adjoint).collect() }
    }

    /// Componentwise equality with the same endpoints.
    pub fn same_as(&self, other: &Intertwiner) -> bool {
        *self.source == *other.source && *self.target == *other.target && self.values == other.values
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().all(|v| *v == PauliElement::identity())
    }

    pub fn is_unitary(&self) -> bool {
        self.values.iter().all(PauliElement::is_unitary)
    }

    /// Common scalar value, if every component is the same multiple of `1`.
    pub fn as_scalar(&self) -> Option<Gauss> {
        let c = self.values.first()?.as_scalar()?;
        self.values.iter().all(|v| v.as_scalar() == Some(c)).then_some(c)
    }

    /// Exact check of locality and the intertwining relation over all stored `b` and `λ`.
    pub fn verify(&self) -> Check {
        let x = &self.source;
        let y = &self.target;
        let f = x.frame();
        let p = f.poset();
        let n = p.len();
        if let Some(a) = (0..n).find(|&a| !f.net().algebra(a).contains(&self.values[a])) {
            return Check::from_first_failure(INTERTWINER, (a + 1) as u64, Some(format!("t_{} = {} is outside the local algebra", p.ids[a], self.values[a])));
        }
        let ones = f.ones();
        let g_len = f.group_len();
        let failure = (0..ones.len()).into_par_iter().find_map_first(|k| {
            let b = &ones[k];
            (0..g_len).find_map(|l| {
                let lhs = f.alpha_inv(l, &self.values[p.act(l, b.to())]).mul(x.stored(l, k));
                let rhs = y.stored(l, k).mul(&self.values[b.from()]);
                (lhs != rhs).then(|| format!("b = {}, lambda = {}: {lhs} != {rhs}", f.simplex_name(b), p.group[l]))
            })
        });
        Check::from_first_failure(INTERTWINER, (n + ones.len() * g_len) as u64, failure)
    }
}

/// A basis of `(X, Y)`.
#[derive(Clone, Debug)]
pub struct ArrowSpace {
    pub basis: Vec<Intertwiner>,
}

impl ArrowSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `(X, X) = ℂ 1`.
    pub fn is_scalar(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].as_scalar().is_some()
    }

    /// A basis arrow with unitary components, normalised.
    pub fn unitary(&self) -> Option<&Intertwiner> {
        self.basis.iter().find(|t| t.is_unitary())
    }
}

const NODE_CAP: usize = 1 << 20;
const SEED_DIM_CAP: usize = 16;

/// Exact basis of `(X, Y)` for cocycles whose values are single phased strings.
///
/// Each relation `α_λ⁻¹(t_u) X_b(λ) = Y_b(λ) t_v` pairs the strings of `t_u` and `t_v`
/// bijectively, so the solutions are spanned by the consistent, fully local components of the
/// graph on `(element, string)` nodes.
pub fn arrow_space(x: &Arc<Cocycle>, y: &Arc<Cocycle>) -> Result<ArrowSpace, CocycleError> {
    if !x.same_frame(y) {
        return Err(CocycleError::NetMismatch);
    }
    if !x.is_monomial() || !y.is_monomial() {
        return Err(CocycleError::NonMonomial);
    }
    let f = x.frame();
    let p = f.poset();
    let n = p.len();
    let ones = f.ones();
    let g_len = f.group_len();
    // relation r = (k, λ): from u = λ∂₀b to v = ∂₁b.
    struct Rel {
        u: usize,
        v: usize,
        lam: usize,
        shift: PauliString,
        x: (Gauss, PauliString),
        y: (Gauss, PauliString),
    }
    let mut rels = Vec::with_capacity(ones.len() * g_len);
    for (k, b) in ones.iter().enumerate() {
        for l in 0..g_len {
            let xv = x.stored(l, k).as_monomial().expect("checked monomial");
            let yv = y.stored(l, k).as_monomial().expect("checked monomial");
            let shift = PauliString::new(xv.1.x ^ yv.1.x, xv.1.z ^ yv.1.z);
            rels.push(Rel { u: p.act(l, b.to()), v: b.from(), lam: l, shift, x: xv, y: yv });
        }
    }
    let mut by_element: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for (i, r) in rels.iter().enumerate() {
        by_element[r.u].push((i, true));
        by_element[r.v].push((i, false));
    }
    let inv_perm: Vec<_> = (0..g_len).map(|l| f.net().rep[p.inverse[l]].clone()).collect();
    // forward: coefficient at v from coefficient at u.
    let forward = |r: &Rel, s: &PauliString| -> (PauliString, Gauss) {
        let moved = s.permute(&inv_perm[r.lam]);
        let (k1, _) = moved.mul(&r.x.1);
        let s2 = PauliString::new(moved.x ^ r.shift.x, moved.z ^ r.shift.z);
        let (k2, _) = r.y.1.mul(&s2);
        let m = r.x.0 * Gauss::i_pow(k1 as i64) * (r.y.0 * Gauss::i_pow(k2 as i64)).inv().expect("unitary values");
        (s2, m)
    };
    let backward = |r: &Rel, s2: &PauliString| -> (PauliString, Gauss) {
        let moved = PauliString::new(s2.x ^ r.shift.x, s2.z ^ r.shift.z);
        let s = moved.permute(&f.net().rep[r.lam]);
        let (_, m) = forward(r, &s);
        (s, m.inv().expect("nonzero multiplier"))
    };
    let a0 = (0..n).min_by_key(|&a| (f.net().algebra(a).dim(), a)).ok_or_else(|| CocycleError::Malformed("empty poset".into()))?;
    let seed_alg = f.net().algebra(a0);
    if seed_alg.dim() > SEED_DIM_CAP {
        return Err(CocycleError::Malformed(format!("smallest local algebra has dimension {}", seed_alg.dim())));
    }
    let mut visited: HashMap<(usize, PauliString), ()> = HashMap::new();
    let mut basis = Vec::new();
    for seed in seed_alg.subspace.elements() {
        if visited.contains_key(&(a0, seed)) {
            continue;
        }
        let mut coeff: HashMap<(usize, PauliString), Gauss> = HashMap::new();
        let mut queue = VecDeque::new();
        coeff.insert((a0, seed), Gauss::one());
        queue.push_back((a0, seed));
        let mut ok = true;
        while let Some((w, s)) = queue.pop_front() {
            if coeff.len() > NODE_CAP {
                return Err(CocycleError::Malformed("arrow search exceeded its node cap".into()));
            }
            if !f.net().algebra(w).contains_string(&s) {
                ok = false;
            }
            let c = coeff[&(w, s)];
            for &(i, is_u) in &by_element[w] {
                let r = &rels[i];
                let (node, value) = if is_u {
                    let (s2, m) = forward(r, &s);
                    ((r.v, s2), c * m)
                } else {
                    let (s1, m) = backward(r, &s);
                    ((r.u, s1), c * m)
                };
                match coeff.get(&node) {
                    Some(old) => {
                        if *old != value {
                            ok = false;
                        }
                    }
                    None => {
                        coeff.insert(node, value);
                        queue.push_back(node);
                    }
                }
            }
        }
        for key in coeff.keys() {
            visited.insert(*key, ());
        }
        if !ok {
            continue;
        }
        let mut values = vec![PauliElement::zero(); n];
        let mut keys: Vec<_> = coeff.into_iter().collect();
        keys.sort_by_key(|((a, s), _)| (*a, *s));
        for ((a, s), c) in keys {
            values[a] = values[a].add(&PauliElement::term(c, s));
        }
        basis.push(Intertwiner::new(x.clone(), y.clone(), values)?);
    }
    Ok(ArrowSpace { basis })
}

/// An isometry `v ∈ A(a)` with `v v* = e_k` for an element `k ⊆ a`.
#[derive(Clone, Debug)]
pub struct IsometryWitness {
    pub inner: usize,
    pub isometry: PauliElement,
}

/// Subobject for a projection `e ∈ (X, X)`: `w_a = X_{k(a)→a} v_a` and
/// `Y_b(λ) = α_λ⁻¹(w*_{λ∂₀b}) X_b(λ) w_{∂₁b}`. Returns `Y` and `w ∈ (Y, X)`.
pub fn subobject(x: &Arc<Cocycle>, e: &Intertwiner, witnesses: &[Option<IsometryWitness>]) -> Result<(Cocycle, Intertwiner), CocycleError> {
    let f = x.frame();
    let p = f.poset();
    let n = p.len();
    if *e.source != **x || *e.target != **x {
        return Err(CocycleError::ShapeMismatch("projection must be an arrow (X, X)".into()));
    }
    let projection = e.values.iter().all(|v| v.is_projection());
    if !projection || !e.verify().holds() {
        return Err(CocycleError::WitnessInvalid("e is not a projection arrow of X".into()));
    }
    if witnesses.len() != n {
        return Err(CocycleError::ShapeMismatch(format!("{} witnesses for {n} elements", witnesses.len())));
    }
    let one = PauliElement::identity();
    let mut w = Vec::with_capacity(n);
    for a in 0..n {
        let wit = witnesses[a].as_ref().ok_or_else(|| CocycleError::BorchersUnavailable(format!("no isometry supplied at {}", p.ids[a])))?;
        let k = wit.inner;
        let v = &wit.isometry;
        if k >= n || !p.leq(k, a) {
            return Err(CocycleError::WitnessInvalid(format!("inner element for {} is not below it", p.ids[a])));
        }
        if !f.net().algebra(a).contains(v) {
            return Err(CocycleError::WitnessInvalid(format!("isometry at {} is not local", p.ids[a])));
        }
        if v.adjoint().mul(v) != one {
            return Err(CocycleError::WitnessInvalid(format!("witness at {} is not an isometry", p.ids[a])));
        }
        if v.mul(&v.adjoint()) != e.values[k] {
            return Err(CocycleError::WitnessInvalid(format!("range of the witness at {} is not e at {}", p.ids[a], p.ids[k])));
        }
        let b = f.edge_index(k, a).ok_or_else(|| CocycleError::WitnessInvalid("no canonical 1-simplex to the element".into()))?;
        w.push(x.stored(0, b).mul(v));
    }
    let ones = f.ones();
    let rows = (0..f.group_len())
        .map(|l| {
            ones.iter()
                .enumerate()
                .map(|(k, b)| f.alpha_inv(l, &w[p.act(l, b.to())].adjoint()).mul(x.stored(l, k)).mul(&w[b.from()]))
                .collect()
        })
        .collect();
    let y = Arc::new(Cocycle::from_values(f.clone(), rows, Provenance::Synthetic { note: "subobject".into() })?);
    let arrow = Intertwiner::new(y.clone(), x.clone(), w)?;
    Ok(((*y).clone(), arrow))
}

/// Direct sum from isometry pairs `(v_a, w_a)` with `v v* + w w* = 1`; returns `Z` and the
/// inclusions `v ∈ (X, Z)`, `w ∈ (Y, Z)`.
pub fn direct_sum(
    x: &Arc<Cocycle>,
    y: &Arc<Cocycle>,
    witnesses: &[Option<(PauliElement, PauliElement)>],
) -> Result<(Cocycle, Intertwiner, Intertwiner), CocycleError> {
    if !x.same_frame(y) {
        return Err(CocycleError::NetMismatch);
    }
    let f = x.frame();
    let p = f.poset();
    let n = p.len();
    if witnesses.len() != n {
        return Err(CocycleError::ShapeMismatch(format!("{} witnesses for {n} elements", witnesses.len())));
    }
    let one = PauliElement::identity();
    let mut pairs = Vec::with_capacity(n);
    for a in 0..n {
        let (v, w) = witnesses[a].clone().ok_or_else(|| CocycleError::BorchersUnavailable(format!("no isometries supplied at {}", p.ids[a])))?;
        let alg = f.net().algebra(a);
        if !alg.contains(&v) || !alg.contains(&w) {
            return Err(CocycleError::WitnessInvalid(format!("isometries at {} are not local", p.ids[a])));
        }
        if v.adjoint().mul(&v) != one || w.adjoint().mul(&w) != one {
            return Err(CocycleError::WitnessInvalid(format!("witnesses at {} are not isometries", p.ids[a])));
        }
        if v.mul(&v.adjoint()).add(&w.mul(&w.adjoint())) != one {
            return Err(CocycleError::WitnessInvalid(format!("ranges at {} do not add up to 1", p.ids[a])));
        }
        pairs.push((v, w));
    }
    let ones = f.ones();
    let rows = (0..f.group_len())
        .map(|l| {
            ones.iter()
                .enumerate()
                .map(|(k, b)| {
                    let (vt, wt) = &pairs[p.act(l, b.to())];
                    let (vf, wf) = &pairs[b.from()];
                    let left = f.alpha_inv(l, vt).mul(x.stored(l, k)).mul(&vf.adjoint());
                    let right = f.alpha_inv(l, wt).mul(y.stored(l, k)).mul(&wf.adjoint());
                    left.add(&right)
                })
                .collect()
        })
        .collect();
    let z = Arc::new(Cocycle::from_values(f.clone(), rows, Provenance::Synthetic { note: "direct sum".into() })?);
    let v = Intertwiner::new(x.clone(), z.clone(), pairs.iter().map(|(v, _)| v.clone()).collect())?;
    let w = Intertwiner::new(y.clone(), z.clone(), pairs.into_iter().map(|(_, w)| w).collect())?;
    Ok(((*z).clone(), v, w))
}

#[cfg(test)]
mod tests {
    use super::super::testnets::*;
    use super::super::*;
    use super::*;
    use crate::regions::Action;

    fn setup() -> (Arc<Frame>, Vec<usize>, Vec<Action>) {
        let (frame, family) = small_grid();
        let sites = centre_sites(&family).unwrap();
        (frame, sites, family.symmetries.iter().map(|s| s.action.clone()).collect())
    }

    #[test]
    fn identity_arrow_is_valid_and_space_is_scalar() {
        let (frame, sites, _) = setup();
        let x = Arc::new(charge_pair(frame, sites, Charge::Z, &Character::trivial(8)).unwrap());
        assert!(Intertwiner::identity(x.clone()).verify().holds());
        let space = arrow_space(&x, &x).unwrap();
        assert!(space.is_scalar(), "dim {}", space.dim());
    }

    #[test]
    fn charge_cannot_be_intertwined_with_the_vacuum() {
        let (frame, sites, _) = setup();
        let x = Arc::new(charge_pair(frame.clone(), sites.clone(), Charge::Z, &Character::trivial(8)).unwrap());
        let i = Arc::new(Cocycle::identity(frame));
        let t = Intertwiner::new(x.clone(), i.clone(), sites.iter().map(|s| PauliElement::string(PauliString::z_on(*s))).collect()).unwrap();
        let c = t.verify();
        assert!(!c.holds());
        assert!(c.witness.unwrap().contains("outside the local algebra"));
        assert_eq!(arrow_space(&x, &i).unwrap().dim(), 0);
    }

    #[test]
    fn twisted_charge_is_inequivalent() {
        let (frame, sites, actions) = setup();
        let x = Arc::new(charge_pair(frame.clone(), sites.clone(), Charge::Z, &Character::trivial(8)).unwrap());
        let chi = Character::from_actions(CharacterKind::Determinant, &actions).unwrap();
        let xc = Arc::new(charge_pair(frame, sites, Charge::Z, &chi).unwrap());
        for c in [Gauss::one(), -Gauss::one(), Gauss::i()] {
            assert!(!Intertwiner::scalar(x.clone(), xc.clone(), c).unwrap().verify().holds());
        }
        assert_eq!(arrow_space(&x, &xc).unwrap().dim(), 0);
        assert!(Intertwiner::scalar(x.clone(), x, -Gauss::one()).unwrap().verify().holds());
    }

    #[test]
    fn compose_and_adjoint() {
        let (frame, sites, _) = setup();
        let x = Arc::new(charge_pair(frame.clone(), sites, Charge::Z, &Character::trivial(8)).unwrap());
        let t = Intertwiner::scalar(x.clone(), x.clone(), Gauss::i()).unwrap();
        let tt = t.adjoint().compose(&t).unwrap();
        assert!(tt.same_as(&Intertwiner::identity(x.clone())));
        let i = Arc::new(Cocycle::identity(frame));
        let s = Intertwiner::identity(i);
        assert!(matches!(t.compose(&s), Err(CocycleError::ShapeMismatch(_))));
    }

    #[test]
    fn subobject_of_the_unit_projection() {
        let (frame, sites, _) = setup();
        let x = Arc::new(charge_pair(frame.clone(), sites, Charge::Z, &Character::trivial(8)).unwrap());
        let e = Intertwiner::identity(x.clone());
        let n = frame.poset().len();
        let none: Vec<Option<IsometryWitness>> = vec![None; n];
        assert!(matches!(subobject(&x, &e, &none), Err(CocycleError::BorchersUnavailable(_))));
        let witnesses: Vec<_> = (0..n).map(|a| Some(IsometryWitness { inner: a, isometry: PauliElement::identity() })).collect();
        let (y, w) = subobject(&x, &e, &witnesses).unwrap();
        assert!(verify_cocycle(&y, &VerifyOptions::seeded(2)).passed());
        assert!(w.verify().holds());
        assert!(w.is_unitary());
        let inner: Vec<_> = (0..n)
            .map(|a| {
                let k = frame.poset().properly_below(a).first().unwrap_or(a);
                Some(IsometryWitness { inner: k, isometry: PauliElement::identity() })
            })
            .collect();
        let (y2, w2) = subobject(&x, &e, &inner).unwrap();
        assert!(verify_cocycle(&y2, &VerifyOptions::seeded(2)).passed());
        assert!(w2.verify().holds());
    }

    #[test]
    fn direct_sums_need_isometries_with_complementary_ranges() {
        let (frame, sites, _) = setup();
        let x = Arc::new(charge_pair(frame.clone(), sites, Charge::Z, &Character::trivial(8)).unwrap());
        let n = frame.poset().len();
        assert!(matches!(direct_sum(&x, &x, &vec![None; n]), Err(CocycleError::BorchersUnavailable(_))));
        let ones = vec![Some((PauliElement::identity(), PauliElement::identity())); n];
        assert!(matches!(direct_sum(&x, &x, &ones), Err(CocycleError::WitnessInvalid(_))));
    }
}
