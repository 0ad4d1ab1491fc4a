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

//! Covariant 1-cocycles over a Pauli net, stored on canonical 1-simplices.

pub mod arrows;
pub mod conjugate;
pub mod tensor;
pub mod verify;

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::paulinet::{Net, PauliElement, PauliString};
use crate::poset::IndexPoset;
use crate::regions::{int, Action, Model, Rat, RegionFamily};
use crate::scalar::Gauss;
use crate::simplicial::{canonical_one_simplices, canonical_two_simplices, Canonical, Path, Simplex};

pub use arrows::{arrow_space, direct_sum, subobject, ArrowSpace, Intertwiner, IsometryWitness};
pub use conjugate::{conjugate, statistics, Conjugate, PathDependence, StatisticsOptions, StatisticsReport};
pub use tensor::{epsilon, epsilon_arrow, epsilon_with, extended_product, rho, rho_via, tensor, tensor_arrows};
pub use verify::{verify_cocycle, Check, CheckVerdict, CocycleReport, VerifyOptions};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CocycleError {
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("cocycles live over different nets")]
    NetMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("value for {simplex} is not in the local algebra")]
    NotInAlgebra { simplex: String },
    #[error("site {site} is not inside element {element}")]
    SiteOutsideRegion { element: String, site: usize },
    #[error("not equivariant under symmetry {symmetry} at {element}")]
    NotEquivariant { symmetry: String, element: String },
    #[error("character is not a unimodular homomorphism: {0}")]
    BadCharacter(String),
    #[error("element {0} has an empty causal complement")]
    NoDisjoint(String),
    #[error("no pair of disjoint path targets from {0}")]
    NoDisjointTargets(String),
    #[error("no canonical path from {from} to {to}")]
    Disconnected { from: String, to: String },
    #[error("values are not single phased strings")]
    NonMonomial,
    #[error("not simple: {0}")]
    NotSimple(String),
    #[error("result depends on the path choice: {first} versus {second}")]
    PathDependent { first: String, second: String },
    #[error("result depends on the choice of disjoint element: {0}")]
    ChoiceDependent(String),
    #[error("invalid isometry witness: {0}")]
    WitnessInvalid(String),
    #[error("no isometry available: {0}")]
    BorchersUnavailable(String),
    #[error("malformed cocycle data: {0}")]
    Malformed(String),
}

/// Which self-adjoint charged string sits at a charge site.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Charge {
    /// `Z` on the site.
    Z,
    /// Jordan-Wigner Majorana string `Z_0 ... Z_{s-1} X_s`.
    Majorana,
}

impl Charge {
    pub fn string(self, site: usize) -> PauliString {
        match self {
            Charge::Z => PauliString::z_on(site),
            Charge::Majorana => PauliString::new(1 << site, (1u128 << site) - 1),
        }
    }
}

/// Characters of a signed-permutation group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CharacterKind {
    Trivial,
    /// Sign of the coordinate permutation.
    PermutationSign,
    /// Product of the coordinate signs.
    ReflectionSign,
    /// Determinant of the signed permutation.
    Determinant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub name: String,
    pub values: Vec<Gauss>,
}

fn perm_sign(perm: &[usize]) -> i128 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for i in 0..perm.len() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

impl Character {
    pub fn trivial(group_len: usize) -> Self {
        Self { name: "trivial".into(), values: vec![Gauss::one(); group_len] }
    }

    pub fn from_actions(kind: CharacterKind, actions: &[Action]) -> Result<Self, CocycleError> {
        let values = actions
            .iter()
            .map(|a| match (kind, a) {
                (CharacterKind::Trivial, _) => Ok(1),
                (_, Action::Signed { perm, signs }) => {
                    let p = perm_sign(perm);
                    let s: i128 = signs.iter().map(|&x| x as i128).product();
                    Ok(match kind {
                        CharacterKind::PermutationSign => p,
                        CharacterKind::ReflectionSign => s,
                        _ => p * s,
                    })
                }
                (_, Action::Turn { .. }) => Err(CocycleError::BadCharacter("sign characters need signed actions".into())),
            })
            .map(|r| r.map(Gauss::from_int))
            .collect::<Result<Vec<_>, _>>()?;
        let name = serde_json::to_value(kind).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default();
        Ok(Self { name, values })
    }

    /// Unimodular values obeying the group table.
    pub fn check(&self, p: &IndexPoset) -> Result<(), CocycleError> {
        let n = p.group_len();
        if self.values.len() != n {
            return Err(CocycleError::BadCharacter(format!("{} values for {n} symmetries", self.values.len())));
        }
        if let Some(g) = self.values.iter().position(|c| !c.is_unimodular()) {
            return Err(CocycleError::BadCharacter(format!("value at {} is not unimodular", p.group[g])));
        }
        for g in 0..n {
            for h in 0..n {
                if self.values[p.table[g][h]] != self.values[g] * self.values[h] {
                    return Err(CocycleError::BadCharacter(format!("fails on ({}, {})", p.group[g], p.group[h])));
                }
            }
        }
        Ok(())
    }
}

/// A canonical 2-simplex (or degenerate one) by face indices `[∂₀, ∂₁, ∂₂]` into the frame's
/// 1-simplices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tri {
    pub faces: [usize; 3],
    pub support: usize,
}

/// Everything a cocycle needs from its net: canonical simplices, routes and the group action.
#[derive(Debug)]
pub struct Frame {
    net: Net,
    canon: Canonical,
    ones: Vec<Simplex>,
    index: HashMap<(usize, usize), usize>,
    /// `parent[t][v]`: next vertex on the canonical route from `v` to `t`.
    parent: Vec<Vec<usize>>,
    /// BFS order from `t`, starting with `t`.
    order: Vec<Vec<usize>>,
    act_one: Vec<Vec<Option<usize>>>,
    disjoint: Vec<Option<usize>>,
    inverse_perm: Vec<crate::paulinet::SitePerm>,
    tris: OnceLock<Vec<Tri>>,
}

const UNREACHED: usize = usize::MAX;

impl Frame {
    pub fn new(net: Net) -> Self {
        let p = &net.poset;
        let n = p.len();
        let canon = Canonical::new(p);
        let mut ones: Vec<Simplex> = (0..n).map(|o| canon.edge(o, o).expect("degenerate edges exist")).collect();
        let mut rest = canonical_one_simplices(p);
        rest.sort_by_key(|b| (b.from(), b.to()));
        ones.extend(rest);
        let index: HashMap<(usize, usize), usize> = ones.iter().enumerate().map(|(k, b)| ((b.from(), b.to()), k)).collect();
        let mut parent = vec![vec![UNREACHED; n]; n];
        let mut order = vec![Vec::new(); n];
        for t in 0..n {
            let mut queue = VecDeque::from([t]);
            parent[t][t] = t;
            while let Some(v) = queue.pop_front() {
                order[t].push(v);
                for &w in canon.neighbours(v) {
                    if parent[t][w] == UNREACHED {
                        parent[t][w] = v;
                        queue.push_back(w);
                    }
                }
            }
        }
        let act_one = (0..p.group_len())
            .map(|g| {
                ones.iter()
                    .map(|b| {
                        let (f, t, s) = (p.act(g, b.from()), p.act(g, b.to()), p.act(g, b.support()));
                        index.get(&(f, t)).copied().filter(|k| ones[*k].support() == s)
                    })
                    .collect()
            })
            .collect();
        let disjoint = (0..n).map(|a| p.complement_set(a).iter().min_by(|x, y| p.ids[*x].cmp(&p.ids[*y]))).collect();
        let inverse_perm = (0..p.group_len()).map(|g| net.rep[p.inverse[g]].clone()).collect();
        Self { net, canon, ones, index, parent, order, act_one, disjoint, inverse_perm, tris: OnceLock::new() }
    }

    pub fn net(&self) -> &Net {
        &self.net
    }

    pub fn poset(&self) -> &IndexPoset {
        &self.net.poset
    }

    pub fn canonical(&self) -> &Canonical {
        &self.canon
    }

    /// Canonical 1-simplices: the degenerate one at each element first (index = element), then
    /// both directions of every canonical edge.
    pub fn ones(&self) -> &[Simplex] {
        &self.ones
    }

    pub fn group_len(&self) -> usize {
        self.net.poset.group_len()
    }

    pub fn edge_index(&self, from: usize, to: usize) -> Option<usize> {
        self.index.get(&(from, to)).copied()
    }

    /// Index of `b` if it is one of the stored 1-simplices.
    pub fn canonical_index(&self, b: &Simplex) -> Option<usize> {
        self.edge_index(b.from(), b.to()).filter(|k| self.ones[*k].support() == b.support())
    }

    /// Index of `g b` if that is stored.
    pub fn act_index(&self, g: usize, k: usize) -> Option<usize> {
        self.act_one[g][k]
    }

    /// Default element disjoint from `a`: the one with the smallest id.
    pub fn disjoint_of(&self, a: usize) -> Option<usize> {
        self.disjoint[a]
    }

    pub fn alpha(&self, g: usize, a: &PauliElement) -> PauliElement {
        a.permute(&self.net.rep[g])
    }

    pub fn alpha_inv(&self, g: usize, a: &PauliElement) -> PauliElement {
        a.permute(&self.inverse_perm[g])
    }

    pub fn simplex_name(&self, b: &Simplex) -> String {
        let ids = &self.net.poset.ids;
        format!("{}>{}@{}", ids[b.from()], ids[b.to()], ids[b.support()])
    }

    /// Canonical route of shortest length; the trivial path when `from == to`.
    pub fn route(&self, from: usize, to: usize) -> Result<Path, CocycleError> {
        if self.parent[to][from] == UNREACHED {
            let ids = &self.net.poset.ids;
            return Err(CocycleError::Disconnected { from: ids[from].clone(), to: ids[to].clone() });
        }
        let mut steps = Vec::new();
        let mut v = from;
        while v != to {
            let w = self.parent[to][v];
            steps.push(self.ones[self.index[&(v, w)]].clone());
            v = w;
        }
        if steps.is_empty() {
            return Ok(Path::trivial(from));
        }
        Path::new(steps).map_err(|e| CocycleError::InvalidPath(e.to_string()))
    }

    /// Shortest canonical route using only vertices accepted by `allowed`.
    pub fn route_within(&self, from: usize, to: usize, allowed: &dyn Fn(usize) -> bool) -> Option<Path> {
        if !allowed(from) || !allowed(to) {
            return None;
        }
        let n = self.net.poset.len();
        let mut prev = vec![UNREACHED; n];
        prev[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for &w in self.canon.neighbours(v) {
                if prev[w] == UNREACHED && allowed(w) && allowed(self.ones[self.index[&(v, w)]].support()) {
                    prev[w] = v;
                    queue.push_back(w);
                }
            }
        }
        if prev[to] == UNREACHED {
            return None;
        }
        let mut rev = Vec::new();
        let mut v = to;
        while v != from {
            let u = prev[v];
            rev.push(self.ones[self.index[&(u, v)]].clone());
            v = u;
        }
        rev.reverse();
        if rev.is_empty() {
            Some(Path::trivial(from))
        } else {
            Path::new(rev).ok()
        }
    }

    /// All orientations of every canonical 2-simplex, plus the degenerate 2-simplices built on
    /// canonical 1-simplices.
    pub fn two_simplices(&self) -> &[Tri] {
        self.tris.get_or_init(|| {
            let p = &self.net.poset;
            let e = |a: usize, b: usize| self.index[&(a, b)];
            let mut out = Vec::new();
            for c in canonical_two_simplices(p) {
                let (a, b, d) = (c.faces()[2].from(), c.faces()[2].to(), c.faces()[0].to());
                for [v0, v1, v2] in [[a, b, d], [a, d, b], [b, a, d], [b, d, a], [d, a, b], [d, b, a]] {
                    out.push(Tri { faces: [e(v1, v2), e(v0, v2), e(v0, v1)], support: c.support() });
                }
            }
            for (k, b) in self.ones.iter().enumerate() {
                let (x, y, s) = (b.from(), b.to(), b.support());
                if x == y {
                    out.push(Tri { faces: [k, k, k], support: s });
                    continue;
                }
                let back = e(y, x);
                out.push(Tri { faces: [back, x, k], support: s });
                out.push(Tri { faces: [k, k, x], support: s });
                out.push(Tri { faces: [y, k, k], support: s });
            }
            out
        })
    }

    pub fn tri_name(&self, t: &Tri) -> String {
        let ids = &self.net.poset.ids;
        let d2 = &self.ones[t.faces[2]];
        let d0 = &self.ones[t.faces[0]];
        format!(
            "({}, {}, {})@{}",
            ids[d2.from()],
            ids[d2.to()],
            ids[d0.to()],
            ids[t.support]
        )
    }
}

/// Where a cocycle came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    ChargePair { sites: Vec<usize>, charge: Charge, character: String },
    PoleConstructed { pole: String },
    Synthetic { note: String },
}

/// Values `X_b(λ)` on canonical 1-simplices for every symmetry.
#[derive(Clone, Debug)]
pub struct Cocycle {
    frame: Arc<Frame>,
    values: Vec<Vec<PauliElement>>,
    provenance: Provenance,
    transports: Vec<OnceLock<Vec<PauliElement>>>,
}

impl PartialEq for Cocycle {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.frame, &other.frame) && self.values == other.values
    }
}

impl Cocycle {
    /// Wraps values indexed `[symmetry][1-simplex]`; only the shape is checked.
    pub fn from_values(frame: Arc<Frame>, values: Vec<Vec<PauliElement>>, provenance: Provenance) -> Result<Self, CocycleError> {
        if values.len() != frame.group_len() || values.iter().any(|row| row.len() != frame.ones.len()) {
            return Err(CocycleError::ShapeMismatch(format!(
                "expected {} rows of {} values",
                frame.group_len(),
                frame.ones.len()
            )));
        }
        let transports = (0..frame.poset().len()).map(|_| OnceLock::new()).collect();
        Ok(Self { frame, values, provenance, transports })
    }

    /// The unit object: every value is `1`.
    pub fn identity(frame: Arc<Frame>) -> Self {
        let values = vec![vec![PauliElement::identity(); frame.ones.len()]; frame.group_len()];
        Self::from_values(frame, values, Provenance::Synthetic { note: "identity".into() }).expect("shape is right")
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn values(&self) -> &[Vec<PauliElement>] {
        &self.values
    }

    pub fn stored(&self, g: usize, k: usize) -> &PauliElement {
        &self.values[g][k]
    }

    /// A copy with one stored value replaced.
    pub fn with_value(&self, g: usize, k: usize, v: PauliElement) -> Self {
        let mut values = self.values.clone();
        values[g][k] = v;
        Self::from_values(self.frame.clone(), values, Provenance::Synthetic { note: "edited".into() }).expect("shape is right")
    }

    pub fn same_frame(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.frame, &other.frame)
    }

    /// `X_o(λ)`: the value on the degenerate 1-simplex at `o`.
    pub fn evaluate_object(&self, o: usize, g: usize) -> &PauliElement {
        &self.values[g][o]
    }

    /// `X_b(e)` for any 1-simplex: stored, or the product along `from -> support -> to`.
    fn roberts_value(&self, b: &Simplex) -> Result<PauliElement, CocycleError> {
        if let Some(k) = self.frame.canonical_index(b) {
            return Ok(self.values[0][k].clone());
        }
        let (f, t, s) = (b.from(), b.to(), b.support());
        let up = self.frame.edge_index(f, s).ok_or_else(|| self.bad_simplex(b))?;
        let down = self.frame.edge_index(s, t).ok_or_else(|| self.bad_simplex(b))?;
        Ok(self.values[0][down].mul(&self.values[0][up]))
    }

    fn bad_simplex(&self, b: &Simplex) -> CocycleError {
        CocycleError::InvalidPath(format!("{} is not a 1-simplex of the poset", self.frame.simplex_name(b)))
    }

    /// `X_b(λ)` for any 1-simplex of the poset; non-stored values use
    /// `X_b(λ) = α_λ⁻¹(X_{λb}) X_{∂₁b}(λ)`.
    pub fn value(&self, b: &Simplex, g: usize) -> Result<PauliElement, CocycleError> {
        let p = self.frame.poset();
        if b.dim() != 1 || b.support() >= p.len() || !p.leq(b.from(), b.support()) || !p.leq(b.to(), b.support()) {
            return Err(self.bad_simplex(b));
        }
        if let Some(k) = self.frame.canonical_index(b) {
            return Ok(self.values[g][k].clone());
        }
        if g == 0 {
            return self.roberts_value(b);
        }
        let moved = b.act(p, g).map_err(|e| CocycleError::InvalidPath(e.to_string()))?;
        let x = self.roberts_value(&moved)?;
        Ok(self.frame.alpha_inv(g, &x).mul(&self.values[g][b.from()]))
    }

    /// `X_{λb}(σ)` for a stored `b`.
    pub(crate) fn value_moved(&self, g: usize, k: usize, s: usize) -> PauliElement {
        match self.frame.act_index(g, k) {
            Some(j) => self.values[s][j].clone(),
            None => {
                let b = self.frame.ones[k].act(self.frame.poset(), g).expect("valid symmetry");
                self.value(&b, s).expect("images of 1-simplices are 1-simplices")
            }
        }
    }

    /// `X_p = X_{bₙ} ⋯ X_{b₁}`.
    pub fn evaluate_path(&self, path: &Path) -> Result<PauliElement, CocycleError> {
        let mut acc = PauliElement::identity();
        for b in path.steps() {
            acc = self.roberts_value_checked(b)?.mul(&acc);
        }
        Ok(acc)
    }

    fn roberts_value_checked(&self, b: &Simplex) -> Result<PauliElement, CocycleError> {
        self.value(b, 0)
    }

    /// `X` along the canonical route `from -> to`, cached per target.
    pub fn transport(&self, from: usize, to: usize) -> Result<PauliElement, CocycleError> {
        let row = self.transports[to].get_or_init(|| {
            let n = self.frame.poset().len();
            let mut out = vec![PauliElement::zero(); n];
            out[to] = PauliElement::identity();
            for &v in self.frame.order[to].iter().skip(1) {
                let w = self.frame.parent[to][v];
                let k = self.frame.index[&(v, w)];
                out[v] = out[w].mul(&self.values[0][k]);
            }
            out
        });
        if row[from].is_zero() {
            let ids = &self.frame.poset().ids;
            return Err(CocycleError::Disconnected { from: ids[from].clone(), to: ids[to].clone() });
        }
        Ok(row[from].clone())
    }

    /// Every stored value is a single phased string.
    pub fn is_monomial(&self) -> bool {
        self.values.iter().flatten().all(|v| v.num_terms() == 1)
    }

    /// JSON bundle with values keyed `"symmetry/from>to@support"`.
    pub fn to_json(&self) -> Value {
        let p = self.frame.poset();
        let mut values = BTreeMap::new();
        for (g, row) in self.values.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                values.insert(format!("{}/{}", p.group[g], self.frame.simplex_name(&self.frame.ones[k])), v.to_string());
            }
        }
        json!({
            "net": {"elements": p.len(), "sites": self.frame.net().sites, "model": self.frame.net().model},
            "values": values,
            "provenance": self.provenance,
        })
    }

    pub fn from_json(frame: Arc<Frame>, v: &Value) -> Result<Self, CocycleError> {
        let bad = |m: &str| CocycleError::Malformed(m.to_string());
        let map = v.get("values").and_then(Value::as_object).ok_or_else(|| bad("missing values"))?;
        let provenance: Provenance =
            serde_json::from_value(v.get("provenance").cloned().ok_or_else(|| bad("missing provenance"))?)
                .map_err(|e| bad(&e.to_string()))?;
        let p = frame.poset();
        let mut values = vec![vec![PauliElement::zero(); frame.ones.len()]; frame.group_len()];
        let mut seen = 0;
        for (g, row) in values.iter_mut().enumerate() {
            for (k, slot) in row.iter_mut().enumerate() {
                let key = format!("{}/{}", p.group[g], frame.simplex_name(&frame.ones[k]));
                let text = map.get(&key).and_then(Value::as_str).ok_or_else(|| bad(&format!("missing value {key}")))?;
                *slot = text.parse().map_err(|e: crate::paulinet::PauliError| bad(&e.to_string()))?;
                seen += 1;
            }
        }
        if seen != map.len() {
            return Err(bad("unexpected value keys"));
        }
        Self::from_values(frame, values, provenance)
    }
}

/// Lattice site at the centre of each region: the centre of a ball, or the spatial midpoint of a
/// double cone.
pub fn centre_sites(family: &RegionFamily) -> Result<Vec<usize>, CocycleError> {
    let lattice = family.lattice.as_ref().ok_or_else(|| CocycleError::Malformed("family has no lattice".into()))?;
    family
        .regions
        .iter()
        .zip(&family.ids)
        .map(|(r, id)| {
            let coords: Vec<Rat> = match &r.model {
                Model::SliceBall { center, .. } => center.coords.clone(),
                Model::ApexDoubleCone { minus, plus } => {
                    minus.coords.iter().zip(&plus.coords).skip(1).map(|(a, b)| (a + b) / int(2)).collect()
                }
                Model::DirectionCap { .. } => return Err(CocycleError::Malformed(format!("{id} has no lattice centre"))),
            };
            let ints = coords
                .iter()
                .map(|c| {
                    if c.is_integer() {
                        i64::try_from(c.to_integer()).ok()
                    } else {
                        None
                    }
                })
                .collect::<Option<Vec<i64>>>()
                .ok_or_else(|| CocycleError::Malformed(format!("centre of {id} is not a lattice point")))?;
            lattice.index_of(&ints).ok_or_else(|| CocycleError::Malformed(format!("centre of {id} is outside the lattice")))
        })
        .collect()
}

/// The charge-pair cocycle `X_b(λ) = χ(λ) F_{s(∂₀b)} F_{s(∂₁b)}`.
pub fn charge_pair(frame: Arc<Frame>, sites: Vec<usize>, charge: Charge, character: &Character) -> Result<Cocycle, CocycleError> {
    let net = frame.net();
    let p = &net.poset;
    if sites.len() != p.len() {
        return Err(CocycleError::ShapeMismatch(format!("{} sites for {} elements", sites.len(), p.len())));
    }
    character.check(p)?;
    for (o, &s) in sites.iter().enumerate() {
        if s >= net.sites || net.site_map[o] >> s & 1 == 0 {
            return Err(CocycleError::SiteOutsideRegion { element: p.ids[o].clone(), site: s });
        }
    }
    let strings: Vec<PauliElement> = (0..net.sites).map(|s| PauliElement::string(charge.string(s))).collect();
    for g in 0..p.group_len() {
        for (o, &s) in sites.iter().enumerate() {
            let moved = sites[p.act(g, o)];
            if net.rep[g].image(s) != moved || frame.alpha(g, &strings[s]) != strings[moved] {
                return Err(CocycleError::NotEquivariant { symmetry: p.group[g].clone(), element: p.ids[o].clone() });
            }
        }
    }
    let values = (0..p.group_len())
        .map(|g| {
            frame
                .ones()
                .iter()
                .map(|b| strings[sites[b.to()]].mul(&strings[sites[b.from()]]).scale(character.values[g]))
                .collect()
        })
        .collect();
    Cocycle::from_values(
        frame.clone(),
        values,
        Provenance::ChargePair { sites, charge, character: character.name.clone() },
    )
}

#[cfg(test)]
pub(crate) mod testnets {
    use super::*;
    use crate::paulinet::NetModel;
    use crate::poset::build_poset;
    use crate::regions::family::{sample_family, FamilyParams};

    pub fn frame_from(params: &str, model: NetModel) -> (Arc<Frame>, RegionFamily) {
        let params: FamilyParams = serde_json::from_str(params).unwrap();
        let family = sample_family(&params).unwrap();
        let poset = build_poset(&family).unwrap();
        let net = Net::from_family(&family, poset, model).unwrap();
        (Arc::new(Frame::new(net)), family)
    }

    /// A 3x3 slice grid under the dihedral group.
    pub fn small_grid() -> (Arc<Frame>, RegionFamily) {
        frame_from(
            r#"{"kind":"slice-grid","extent":[1,1],"radii":["0","1"],"group":"dihedral"}"#,
            NetModel::EvenZ2,
        )
    }

    pub fn chain() -> (Arc<Frame>, RegionFamily) {
        frame_from(
            r#"{"kind":"cone-grid","extent":[4],"radii":["1/10","11/10","21/10"],"group":"trivial"}"#,
            NetModel::EvenFermion,
        )
    }
}
