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

//! Observable nets: one Pauli-string algebra per poset element.

use super::f2::Subspace;
use super::pauli::{PauliElement, PauliString, SitePerm, MAX_SITES};
use crate::poset::{IndexPoset, Verdict, Witness};
use crate::regions::{Chart, Model, Point, Region, RegionFamily};
use crate::regions::in_causal_future;
use num_rational::Ratio;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NetError {
    #[error("generator {string} is not supported on the allowed sites")]
    SupportViolation { string: String },
    #[error("{0} sites exceed the supported maximum of {MAX_SITES}")]
    TooManySites(usize),
    #[error("the family has no lattice of sites")]
    NoLattice,
    #[error("region {0} cannot be assigned lattice sites")]
    UnsupportedRegion(String),
    #[error("symmetry {symmetry} moves a site off the lattice")]
    SiteNotClosed { symmetry: String },
    #[error("malformed net: {0}")]
    Malformed(String),
    #[error("element index {0} is out of range")]
    UnknownElement(usize),
    #[error("{0} is not below {1}")]
    NotBelow(String, String),
    #[error("operand is not a projection")]
    NotAProjection,
    #[error("operand does not lie in the algebra of {0}")]
    NotInAlgebra(String),
}

/// Which Pauli strings a region's algebra admits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NetModel {
    /// Every string on the region's sites.
    Full,
    /// Strings commuting with the product of `X` over the region (even number of `Z`/`Y`).
    EvenZ2,
    /// Strings commuting with the product of `Z` over the region (even number of `X`/`Y`).
    EvenFermion,
}

fn sites_of(mask: u128) -> Vec<usize> {
    (0..MAX_SITES).filter(|i| (mask >> i) & 1 == 1).collect()
}

impl NetModel {
    /// Generators of the model's algebra on `mask`.
    pub fn generators(self, mask: u128) -> Vec<PauliString> {
        let sites = sites_of(mask);
        let mut out = Vec::new();
        for (k, &s) in sites.iter().enumerate() {
            match self {
                NetModel::Full => {
                    out.push(PauliString::x_on(s));
                    out.push(PauliString::z_on(s));
                }
                NetModel::EvenZ2 => {
                    out.push(PauliString::x_on(s));
                    if let Some(&t) = sites.get(k + 1) {
                        out.push(PauliString::z_mask((1 << s) | (1 << t)));
                    }
                }
                NetModel::EvenFermion => {
                    out.push(PauliString::z_on(s));
                    if let Some(&t) = sites.get(k + 1) {
                        out.push(PauliString::x_mask((1 << s) | (1 << t)));
                    }
                }
            }
        }
        out
    }

    pub fn algebra(self, mask: u128) -> NetAlgebra {
        NetAlgebra { sites: mask, subspace: Subspace::span(&self.generators(mask)) }
    }

    /// The global parity string the model's strings commute with, if any.
    pub fn parity(self, mask: u128) -> Option<PauliString> {
        match self {
            NetModel::Full => None,
            NetModel::EvenZ2 => Some(PauliString::x_mask(mask)),
            NetModel::EvenFermion => Some(PauliString::z_mask(mask)),
        }
    }
}

/// Complex span of a group of Pauli strings supported on `sites`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NetAlgebra {
    pub sites: u128,
    pub subspace: Subspace,
}

impl NetAlgebra {
    pub fn full(sites: u128) -> Self {
        NetModel::Full.algebra(sites)
    }

    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    pub fn contains_string(&self, s: &PauliString) -> bool {
        self.subspace.contains(s)
    }

    pub fn contains(&self, e: &PauliElement) -> bool {
        e.strings().all(|s| self.subspace.contains(s))
    }

    pub fn is_subalgebra_of(&self, other: &Self) -> bool {
        self.subspace.is_subspace_of(&other.subspace)
    }

    /// A basis string of `self` that anticommutes with some basis string of `other`.
    pub fn anticommuting_pair(&self, other: &Self) -> Option<(PauliString, PauliString)> {
        for a in self.subspace.basis() {
            for b in other.subspace.basis() {
                if !a.commutes(b) {
                    return Some((*a, *b));
                }
            }
        }
        None
    }
}

/// F2 span of `generators`, which must be supported on `sites`.
pub fn generated_algebra(generators: &[PauliString], sites: u128) -> Result<NetAlgebra, NetError> {
    if let Some(bad) = generators.iter().find(|g| g.support() & !sites != 0) {
        return Err(NetError::SupportViolation { string: bad.to_string() });
    }
    Ok(NetAlgebra { sites, subspace: Subspace::span(generators) })
}

/// Strings of `within` commuting with all of `a`.
pub fn commutant(a: &NetAlgebra, within: &NetAlgebra) -> NetAlgebra {
    NetAlgebra { sites: within.sites, subspace: a.subspace.commutant_within(&within.subspace) }
}

fn full_mask(n: usize) -> u128 {
    if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

#[derive(Clone, Debug)]
pub struct Net {
    pub poset: IndexPoset,
    pub model: NetModel,
    pub sites: usize,
    /// Site mask of each element.
    pub site_map: Vec<u128>,
    /// Site permutation of each group element, in poset group order.
    pub rep: Vec<SitePerm>,
    algebras: Vec<NetAlgebra>,
}

fn lattice_sites(region: &Region, points: &[Vec<i64>], id: &str) -> Result<u128, NetError> {
    let mut mask = 0u128;
    for (i, p) in points.iter().enumerate() {
        let inside = match &region.model {
            Model::SliceBall { center, radius, .. } => {
                let d: Ratio<num_bigint::BigInt> = center
                    .coords
                    .iter()
                    .zip(p)
                    .map(|(c, x)| {
                        let diff = c - Ratio::from_integer((*x).into());
                        &diff * &diff
                    })
                    .sum();
                d <= radius * radius
            }
            Model::ApexDoubleCone { minus, plus } => {
                let mut coords = vec![0];
                coords.extend_from_slice(p);
                let q = Point::from_ints(minus.chart, &coords);
                in_causal_future(minus, &q) && in_causal_future(&q, plus)
            }
            Model::DirectionCap { .. } => return Err(NetError::UnsupportedRegion(id.to_string())),
        };
        if inside {
            mask |= 1 << i;
        }
    }
    Ok(mask)
}

impl Net {
    /// Assembles a net from explicit site data; the site map must be monotone.
    pub fn new(
        poset: IndexPoset,
        model: NetModel,
        sites: usize,
        site_map: Vec<u128>,
        rep: Vec<SitePerm>,
    ) -> Result<Self, NetError> {
        if sites > MAX_SITES {
            return Err(NetError::TooManySites(sites));
        }
        if site_map.len() != poset.len() {
            return Err(NetError::Malformed(format!("{} site sets for {} elements", site_map.len(), poset.len())));
        }
        if rep.len() != poset.group_len() {
            return Err(NetError::Malformed(format!("{} permutations for {} symmetries", rep.len(), poset.group_len())));
        }
        let all = full_mask(sites);
        if let Some(i) = site_map.iter().position(|m| m & !all != 0) {
            return Err(NetError::Malformed(format!("element {} uses a site beyond {sites}", poset.ids[i])));
        }
        for (g, perm) in rep.iter().enumerate() {
            let mut seen = vec![false; sites];
            if perm.len() != sites || perm.map.iter().any(|&j| (j as usize) >= sites || std::mem::replace(&mut seen[j as usize], true)) {
                return Err(NetError::Malformed(format!("symmetry {} is not a permutation of {sites} sites", poset.group[g])));
            }
        }
        for a in 0..poset.len() {
            for o in poset.down(a).iter() {
                if site_map[o] & !site_map[a] != 0 {
                    return Err(NetError::Malformed(format!(
                        "site map is not monotone: {} is below {}",
                        poset.ids[o], poset.ids[a]
                    )));
                }
            }
        }
        let algebras = site_map.par_iter().map(|m| model.algebra(*m)).collect();
        Ok(Self { poset, model, sites, site_map, rep, algebras })
    }

    /// Assigns each region the lattice sites it contains: sites within a ball, or the time-zero
    /// sites inside a double cone.
    pub fn from_family(family: &RegionFamily, poset: IndexPoset, model: NetModel) -> Result<Self, NetError> {
        let lattice = family.lattice.as_ref().ok_or(NetError::NoLattice)?;
        let points = &lattice.points;
        if points.len() > MAX_SITES {
            return Err(NetError::TooManySites(points.len()));
        }
        if !matches!(family.chart, Chart::Slice(_) | Chart::Minkowski(_)) {
            return Err(NetError::NoLattice);
        }
        let site_map = family
            .regions
            .iter()
            .zip(&family.ids)
            .map(|(r, id)| lattice_sites(r, points, id))
            .collect::<Result<Vec<_>, _>>()?;
        let rep = family
            .symmetries
            .iter()
            .map(|g| {
                let map = points
                    .iter()
                    .map(|p| {
                        lattice
                            .index_of(&g.action.apply_int(p))
                            .map(|j| j as u32)
                            .ok_or_else(|| NetError::SiteNotClosed { symmetry: g.id.clone() })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(SitePerm { map })
            })
            .collect::<Result<Vec<_>, NetError>>()?;
        Self::new(poset, model, points.len(), site_map, rep)
    }

    pub fn algebra(&self, o: usize) -> &NetAlgebra {
        &self.algebras[o]
    }

    /// The algebra generated by every element.
    pub fn global_algebra(&self) -> NetAlgebra {
        let sites = self.site_map.iter().fold(0, |m, s| m | s);
        let gens: Vec<PauliString> = self.algebras.iter().flat_map(|a| a.subspace.basis().to_vec()).collect();
        NetAlgebra { sites, subspace: Subspace::span(&gens) }
    }

    /// All strings on all sites.
    pub fn ambient(&self) -> NetAlgebra {
        NetAlgebra::full(full_mask(self.sites))
    }

    /// Sum of the algebras of the elements causally disjoint from `o`.
    pub fn complement_algebra(&self, o: usize) -> NetAlgebra {
        let mut sites = 0;
        let mut gens = Vec::new();
        for a in self.poset.complement_set(o).iter() {
            sites |= self.site_map[a];
            gens.extend_from_slice(self.algebras[a].subspace.basis());
        }
        NetAlgebra { sites, subspace: Subspace::span(&gens) }
    }

    /// `V_K ∩ (Σ_{a⊥o} V_a)^ω`.
    pub fn dual_algebra(&self, o: usize, global: &NetAlgebra) -> NetAlgebra {
        commutant(&self.complement_algebra(o), global)
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (id, m) in self.poset.ids.iter().zip(&self.site_map) {
            map.insert(id.clone(), json!(sites_of(*m)));
        }
        let mut rep = Map::new();
        for (g, perm) in self.poset.group.iter().zip(&self.rep) {
            rep.insert(g.clone(), json!(perm.map));
        }
        json!({ "model": self.model, "sites": self.sites, "site_map": map, "rep": rep })
    }

    pub fn from_json(v: &Value, poset: IndexPoset) -> Result<Self, NetError> {
        let bad = |what: &str| NetError::Malformed(what.to_string());
        let model: NetModel =
            serde_json::from_value(v.get("model").cloned().ok_or_else(|| bad("missing model"))?).map_err(|e| bad(&e.to_string()))?;
        let sites = v.get("sites").and_then(Value::as_u64).ok_or_else(|| bad("missing site count"))? as usize;
        if sites > MAX_SITES {
            return Err(NetError::TooManySites(sites));
        }
        let map = v.get("site_map").and_then(Value::as_object).ok_or_else(|| bad("missing site_map"))?;
        let site_map = poset
            .ids
            .iter()
            .map(|id| {
                let list = map.get(id).and_then(Value::as_array).ok_or_else(|| bad(&format!("no sites for {id}")))?;
                list.iter().try_fold(0u128, |m, s| match s.as_u64() {
                    Some(i) if (i as usize) < sites => Ok(m | 1 << i),
                    _ => Err(bad(&format!("bad site in {id}"))),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let reps = v.get("rep").and_then(Value::as_object).ok_or_else(|| bad("missing rep"))?;
        let rep = poset
            .group
            .iter()
            .map(|g| {
                let list = reps.get(g).and_then(Value::as_array).ok_or_else(|| bad(&format!("no permutation for {g}")))?;
                let map = list
                    .iter()
                    .map(|j| j.as_u64().filter(|&j| j < sites as u64).map(|j| j as u32))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| bad(&format!("bad permutation for {g}")))?;
                Ok(SitePerm { map })
            })
            .collect::<Result<Vec<_>, NetError>>()?;
        Self::new(poset, model, sites, site_map, rep)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityEntry {
    pub element: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NetReport {
    pub isotony: Verdict,
    pub causality: Verdict,
    /// The centre of the global algebra is trivial.
    pub factoriality: Verdict,
    /// The commutant of the global algebra among all strings on all sites is trivial.
    pub irreducibility: Verdict,
    pub duality: Vec<DualityEntry>,
    pub covariance: Verdict,
}

impl NetReport {
    pub fn duality_holds(&self) -> bool {
        self.duality.iter().all(|d| d.verdict.is_pass())
    }
}

fn first<T: Send>(items: Vec<Option<T>>) -> Option<T> {
    items.into_iter().flatten().next()
}

fn nontrivial_string(s: &Subspace) -> Option<PauliString> {
    s.basis().first().copied()
}

pub fn check_net(net: &Net) -> NetReport {
    let p = &net.poset;
    let n = p.len();
    let isotony = first(
        (0..n)
            .into_par_iter()
            .map(|a| {
                p.down(a).iter().find_map(|o| {
                    let (va, vo) = (net.algebra(a), net.algebra(o));
                    let s = vo.subspace.basis().iter().find(|s| !va.contains_string(s))?;
                    Some(Witness::elements(vec![o, a], format!("{s} lies in the smaller algebra only")))
                })
            })
            .collect(),
    );
    let causality = first(
        (0..n)
            .into_par_iter()
            .map(|o| {
                p.complement_set(o).iter().filter(|a| *a > o).find_map(|a| {
                    let (x, y) = net.algebra(o).anticommuting_pair(net.algebra(a))?;
                    Some(Witness::elements(vec![o, a], format!("{x} anticommutes with {y}")))
                })
            })
            .collect(),
    );
    let global = net.global_algebra();
    let factoriality = match nontrivial_string(&global.subspace.center()) {
        Some(s) => Verdict::Fails { witness: Witness::elements(vec![], format!("{s} is central")) },
        None => Verdict::Holds,
    };
    let irreducibility = match nontrivial_string(&commutant(&global, &net.ambient()).subspace) {
        Some(s) => Verdict::Fails { witness: Witness::elements(vec![], format!("{s} commutes with the global algebra")) },
        None => Verdict::Holds,
    };
    let duality = (0..n)
        .into_par_iter()
        .map(|o| {
            let dual = net.dual_algebra(o, &global);
            let own = &net.algebra(o).subspace;
            let verdict = if let Some(s) = dual.subspace.basis().iter().find(|s| !own.contains(s)) {
                Verdict::Fails { witness: Witness::elements(vec![o], format!("{s} lies in the dual algebra only")) }
            } else if let Some(s) = own.basis().iter().find(|s| !dual.subspace.contains(s)) {
                Verdict::Fails { witness: Witness::elements(vec![o], format!("{s} is missing from the dual algebra")) }
            } else {
                Verdict::Holds
            };
            DualityEntry { element: p.ids[o].clone(), verdict }
        })
        .collect();
    let covariance = first(
        (0..p.group_len())
            .into_par_iter()
            .map(|g| {
                (0..n).find_map(|o| {
                    let moved = net.algebra(o).subspace.permute(&net.rep[g]);
                    let target = p.act(g, o);
                    if moved == net.algebra(target).subspace && net.rep[g].apply_mask(net.site_map[o]) == net.site_map[target] {
                        return None;
                    }
                    Some(Witness { symmetry: Some(g), ..Witness::elements(vec![o, target], "permuted algebra differs") })
                })
            })
            .collect(),
    );
    let verdict = |w: Option<Witness>| w.map_or(Verdict::Holds, |witness| Verdict::Fails { witness });
    NetReport {
        isotony: verdict(isotony),
        causality: verdict(causality),
        factoriality,
        irreducibility,
        duality,
        covariance: verdict(covariance),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum BorchersOutcome {
    Isometry { isometry: String },
    Unavailable { reason: String },
}

/// Looks for an isometry `V` in the algebra of `a` with `V V* = e` for a projection `e` in the
/// algebra of `o`. In finite dimensions `V* V = 1` forces `tr e = 1`, so only `e = 1` succeeds.
pub fn borchers_witness(net: &Net, o: usize, a: usize, e: &PauliElement) -> Result<(BorchersOutcome, Option<PauliElement>), NetError> {
    let p = &net.poset;
    if o >= p.len() {
        return Err(NetError::UnknownElement(o));
    }
    if a >= p.len() {
        return Err(NetError::UnknownElement(a));
    }
    if !p.leq(o, a) {
        return Err(NetError::NotBelow(p.ids[o].clone(), p.ids[a].clone()));
    }
    if !e.is_projection() {
        return Err(NetError::NotAProjection);
    }
    if !net.algebra(o).contains(e) {
        return Err(NetError::NotInAlgebra(p.ids[o].clone()));
    }
    if *e == PauliElement::identity() {
        let v = PauliElement::identity();
        return Ok((BorchersOutcome::Isometry { isometry: v.to_string() }, Some(v)));
    }
    let trace = e.coefficient(&PauliString::IDENTITY);
    let reason = if trace.is_zero() {
        "the projection is zero".to_string()
    } else {
        format!("normalised trace of the projection is {} but an isometry range needs 1", crate::scalar::Gauss::real(trace.re))
    };
    debug_assert!(trace.im.is_zero() && trace.re < num_rational::Ratio::from_integer(1));
    Ok((BorchersOutcome::Unavailable { reason }, None))
}
