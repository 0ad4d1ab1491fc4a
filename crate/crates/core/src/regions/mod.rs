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

//! Geometric region models with exact inclusion and causal-disjointness predicates.
//!
//! Boundary contact counts against both relations: touching closures are not disjoint, and a
//! region is never properly inside itself.

pub mod exact;
pub mod family;
pub mod symmetry;

pub use exact::{int, rat, Rat};
pub use family::{sample_family, CapLayer, FamilyParams, Orbit, PointLayer, RegionFamily};
pub use symmetry::{group, Action, GroupName, Symmetry};

use exact::{cmp_cos_pi, SignedSqrt};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt::Debug;
use std::hash::Hash;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Chart {
    /// Spacetime of the given dimension; coordinate 0 is time.
    Minkowski(usize),
    /// A spatial slice of the given dimension.
    Slice(usize),
    /// The sphere `S^d`. `S^1` points are stored as a fraction of a full turn in `[0, 1)`,
    /// `S^2` points as nonzero rational direction vectors in 3-space.
    Sphere(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegionError {
    #[error("regions live in different charts or models")]
    ChartMismatch,
    #[error("slice balls on different time slices cannot be compared")]
    CrossSlice,
    #[error("the sampling parameters admit no region")]
    EmptyFamily,
    #[error("symmetry {symmetry} maps region {region} outside the sample")]
    NotClosed { region: String, symmetry: String },
    #[error("the family has no pair of causally disjoint regions")]
    DisjointnessUnavailable,
    #[error("invalid region: {0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub chart: Chart,
    pub coords: Vec<Rat>,
}

impl Point {
    pub fn new(chart: Chart, coords: Vec<Rat>) -> Self {
        Self { chart, coords }
    }

    pub fn from_ints(chart: Chart, coords: &[i64]) -> Self {
        Self::new(chart, coords.iter().map(|c| int(*c)).collect())
    }

    /// Point of `S^1` at `turn` of a full rotation.
    pub fn on_circle(turn: Rat) -> Self {
        Self::new(Chart::Sphere(1), vec![wrap_turn(turn)])
    }

    /// Direction in 3-space, rescaled to a primitive integer vector so that equal directions
    /// compare equal.
    pub fn direction(v: &[Rat]) -> Result<Self, RegionError> {
        if v.len() != 3 || v.iter().all(Zero::is_zero) {
            return Err(RegionError::Invalid("a direction needs three coordinates, not all zero".into()));
        }
        let lcm = v.iter().fold(num_bigint::BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<num_bigint::BigInt> = v.iter().map(|c| (c * Rat::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(num_bigint::BigInt::zero(), |g, c| g.gcd(c));
        Ok(Self::new(Chart::Sphere(2), ints.iter().map(|c| Rat::from_integer(c / &g)).collect()))
    }

    pub fn norm_sq(&self) -> Rat {
        self.coords.iter().map(|c| c * c).sum()
    }

    fn spatial(&self) -> &[Rat] {
        match self.chart {
            Chart::Minkowski(_) => &self.coords[1..],
            _ => &self.coords,
        }
    }

    fn act(&self, action: &Action) -> Result<Self, RegionError> {
        match (self.chart, action) {
            (Chart::Sphere(1), Action::Turn { steps, n }) => {
                Ok(Self::on_circle(&self.coords[0] + rat(*steps, *n)))
            }
            (Chart::Sphere(1), _) | (_, Action::Turn { .. }) => Err(RegionError::ChartMismatch),
            (chart, Action::Signed { perm, signs }) => {
                let offset = usize::from(matches!(chart, Chart::Minkowski(_)));
                if perm.len() + offset != self.coords.len() {
                    return Err(RegionError::ChartMismatch);
                }
                let mut coords = self.coords.clone();
                for i in 0..perm.len() {
                    let v = &self.coords[i + offset];
                    coords[perm[i] + offset] = if signs[i] < 0 { -v } else { v.clone() };
                }
                Ok(Self::new(chart, coords))
            }
        }
    }
}

fn wrap_turn(t: Rat) -> Rat {
    let f = &t - t.floor();
    if f.is_negative() {
        f + Rat::one()
    } else {
        f
    }
}

fn dist_sq(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `q` lies in the closed causal future of `p`.
pub fn in_causal_future(p: &Point, q: &Point) -> bool {
    let dt = &q.coords[0] - &p.coords[0];
    !dt.is_negative() && dt.clone() * dt >= dist_sq(p.spatial(), q.spatial())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Model {
    /// The causal diamond `J+(minus) ∩ J-(plus)`.
    ApexDoubleCone { minus: Point, plus: Point },
    /// Ball of a spatial slice; radius 0 is a single lattice site.
    SliceBall { center: Point, radius: Rat, slice_time: Rat },
    /// Cap of directions around `center` with angular radius `angle * pi`.
    DirectionCap { center: Point, angle: Rat },
}

/// Predicates a region model must supply to enter an index poset. Hypercones or any other
/// geometry plug in by implementing this trait.
pub trait RegionModel: Clone + Debug + Eq + Hash + Send + Sync {
    /// `self ⊆ outer`.
    fn subset_of(&self, outer: &Self) -> Result<bool, RegionError>;
    /// `self ⊂ outer`: closure of `self` inside `outer`.
    fn proper_subset_of(&self, outer: &Self) -> Result<bool, RegionError>;
    fn disjoint_from(&self, other: &Self) -> Result<bool, RegionError>;
    fn act(&self, g: &Symmetry) -> Result<Self, RegionError>;
    fn label(&self) -> String;
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Region {
    pub model: Model,
}

impl Region {
    pub fn double_cone(minus: Point, plus: Point) -> Result<Self, RegionError> {
        if !matches!(minus.chart, Chart::Minkowski(_)) || minus.chart != plus.chart {
            return Err(RegionError::ChartMismatch);
        }
        let dt = &plus.coords[0] - &minus.coords[0];
        if !dt.is_positive() || dt.clone() * dt <= dist_sq(plus.spatial(), minus.spatial()) {
            return Err(RegionError::Invalid("apexes must be future timelike separated".into()));
        }
        Ok(Self { model: Model::ApexDoubleCone { minus, plus } })
    }

    pub fn ball(center: Point, radius: Rat, slice_time: Rat) -> Result<Self, RegionError> {
        if !matches!(center.chart, Chart::Slice(_)) {
            return Err(RegionError::ChartMismatch);
        }
        if radius.is_negative() {
            return Err(RegionError::Invalid("negative radius".into()));
        }
        Ok(Self { model: Model::SliceBall { center, radius, slice_time } })
    }

    /// `angle` is the angular radius in units of pi, strictly between 0 and 1.
    pub fn cap(center: Point, angle: Rat) -> Result<Self, RegionError> {
        if !matches!(center.chart, Chart::Sphere(1) | Chart::Sphere(2)) {
            return Err(RegionError::ChartMismatch);
        }
        if !angle.is_positive() || angle >= Rat::one() {
            return Err(RegionError::Invalid("angular radius must lie strictly between 0 and pi".into()));
        }
        Ok(Self { model: Model::DirectionCap { center, angle } })
    }

    pub fn chart(&self) -> Chart {
        match &self.model {
            Model::ApexDoubleCone { minus, .. } => minus.chart,
            Model::SliceBall { center, .. } | Model::DirectionCap { center, .. } => center.chart,
        }
    }
}

/// Angular distance in units of pi when it is rational, else its cosine.
enum AngDist {
    Exact(Rat),
    Cosine(SignedSqrt),
}

fn angular_distance(a: &Point, b: &Point) -> AngDist {
    match a.chart {
        Chart::Sphere(1) => {
            let d = wrap_turn(&a.coords[0] - &b.coords[0]);
            let d = if d > rat(1, 2) { Rat::one() - d } else { d };
            AngDist::Exact(d * int(2))
        }
        _ => AngDist::Cosine(SignedSqrt::ratio(&dot(&a.coords, &b.coords), &(a.norm_sq() * b.norm_sq()))),
    }
}

/// Orders the angular distance against `phi * pi` for `phi` in `[0, 1]`.
fn cmp_angle(d: &AngDist, phi: &Rat) -> Ordering {
    match d {
        AngDist::Exact(x) => x.cmp(phi),
        // cos is decreasing on [0, pi]
        AngDist::Cosine(c) => cmp_cos_pi(c, phi).reverse(),
    }
}

fn check_pair(a: &Region, b: &Region) -> Result<(), RegionError> {
    if a.chart() != b.chart() || std::mem::discriminant(&a.model) != std::mem::discriminant(&b.model) {
        return Err(RegionError::ChartMismatch);
    }
    if let (Model::SliceBall { slice_time: t1, .. }, Model::SliceBall { slice_time: t2, .. }) = (&a.model, &b.model) {
        if t1 != t2 {
            return Err(RegionError::CrossSlice);
        }
    }
    Ok(())
}

impl RegionModel for Region {
    fn subset_of(&self, outer: &Self) -> Result<bool, RegionError> {
        check_pair(self, outer)?;
        Ok(match (&self.model, &outer.model) {
            (Model::ApexDoubleCone { minus: m1, plus: p1 }, Model::ApexDoubleCone { minus: m2, plus: p2 }) => {
                [m1, p1].iter().all(|x| in_causal_future(m2, x) && in_causal_future(x, p2))
            }
            (Model::SliceBall { center: c1, radius: r1, .. }, Model::SliceBall { center: c2, radius: r2, .. }) => {
                let gap = r2 - r1;
                !gap.is_negative() && dist_sq(&c1.coords, &c2.coords) <= gap.clone() * gap
            }
            (Model::DirectionCap { center: c1, angle: a1 }, Model::DirectionCap { center: c2, angle: a2 }) => {
                let gap = a2 - a1;
                if gap.is_negative() {
                    false
                } else if gap >= Rat::one() {
                    true
                } else {
                    cmp_angle(&angular_distance(c1, c2), &gap) != Ordering::Greater
                }
            }
            _ => unreachable!("checked by check_pair"),
        })
    }

    fn proper_subset_of(&self, outer: &Self) -> Result<bool, RegionError> {
        check_pair(self, outer)?;
        Ok(match (&self.model, &outer.model) {
            (Model::ApexDoubleCone { .. }, Model::ApexDoubleCone { .. }) => self != outer && self.subset_of(outer)?,
            (Model::SliceBall { center: c1, radius: r1, .. }, Model::SliceBall { center: c2, radius: r2, .. }) => {
                let gap = r2 - r1;
                gap.is_positive() && dist_sq(&c1.coords, &c2.coords) < gap.clone() * gap
            }
            (Model::DirectionCap { center: c1, angle: a1 }, Model::DirectionCap { center: c2, angle: a2 }) => {
                let gap = a2 - a1;
                if !gap.is_positive() {
                    false
                } else if gap > Rat::one() {
                    true
                } else {
                    cmp_angle(&angular_distance(c1, c2), &gap) == Ordering::Less
                }
            }
            _ => unreachable!("checked by check_pair"),
        })
    }

    fn disjoint_from(&self, other: &Self) -> Result<bool, RegionError> {
        check_pair(self, other)?;
        Ok(match (&self.model, &other.model) {
            (Model::ApexDoubleCone { minus: pm, plus: pp }, Model::ApexDoubleCone { minus: qm, plus: qp }) => {
                // q+ in J+(p-) and p- in J-(q+) are the same condition, likewise for the pair swapped
                !in_causal_future(pm, qp) && !in_causal_future(qm, pp)
            }
            (Model::SliceBall { center: c1, radius: r1, .. }, Model::SliceBall { center: c2, radius: r2, .. }) => {
                let reach = r1 + r2;
                dist_sq(&c1.coords, &c2.coords) > reach.clone() * reach
            }
            (Model::DirectionCap { center: c1, angle: a1 }, Model::DirectionCap { center: c2, angle: a2 }) => {
                let reach = a1 + a2;
                reach < Rat::one() && cmp_angle(&angular_distance(c1, c2), &reach) == Ordering::Greater
            }
            _ => unreachable!("checked by check_pair"),
        })
    }

    fn act(&self, g: &Symmetry) -> Result<Self, RegionError> {
        let model = match &self.model {
            Model::ApexDoubleCone { minus, plus } => {
                Model::ApexDoubleCone { minus: minus.act(&g.action)?, plus: plus.act(&g.action)? }
            }
            Model::SliceBall { center, radius, slice_time } => Model::SliceBall {
                center: center.act(&g.action)?,
                radius: radius.clone(),
                slice_time: slice_time.clone(),
            },
            Model::DirectionCap { center, angle } => {
                let moved = center.act(&g.action)?;
                let moved = if moved.chart == Chart::Sphere(2) { Point::direction(&moved.coords)? } else { moved };
                Model::DirectionCap { center: moved, angle: angle.clone() }
            }
        };
        Ok(Self { model })
    }

    fn label(&self) -> String {
        let pt = |p: &Point| p.coords.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        match &self.model {
            Model::ApexDoubleCone { minus, plus } => format!("cone[({})..({})]", pt(minus), pt(plus)),
            Model::SliceBall { center, radius, .. } => format!("ball[({});{}]", pt(center), radius),
            Model::DirectionCap { center, angle } => format!("cap[({});{}pi]", pt(center), angle),
        }
    }
}

/// Proper inclusion `inner ⊂ outer`.
pub fn includes(inner: &Region, outer: &Region) -> Result<bool, RegionError> {
    inner.proper_subset_of(outer)
}

pub fn causally_disjoint(a: &Region, b: &Region) -> Result<bool, RegionError> {
    a.disjoint_from(b)
}

pub fn act(g: &Symmetry, r: &Region) -> Result<Region, RegionError> {
    r.act(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ball(x: i64, y: i64, r: i64) -> Region {
        Region::ball(Point::from_ints(Chart::Slice(2), &[x, y]), int(r), int(0)).unwrap()
    }

    fn cone4(t0: i64, t1: i64, x: i64) -> Region {
        Region::double_cone(
            Point::from_ints(Chart::Minkowski(4), &[t0, x, 0, 0]),
            Point::from_ints(Chart::Minkowski(4), &[t1, x, 0, 0]),
        )
        .unwrap()
    }

    #[test]
    fn concentric_balls() {
        assert!(includes(&ball(0, 0, 1), &ball(0, 0, 2)).unwrap());
        assert!(!includes(&ball(0, 0, 1), &ball(0, 0, 1)).unwrap());
        assert!(ball(0, 0, 1).subset_of(&ball(0, 0, 1)).unwrap());
    }

    #[test]
    fn touching_balls_are_not_disjoint() {
        assert!(!causally_disjoint(&ball(0, 0, 1), &ball(2, 0, 1)).unwrap());
        assert!(causally_disjoint(&ball(0, 0, 1), &ball(3, 0, 1)).unwrap());
    }

    #[test]
    fn translated_cones_are_disjoint() {
        let a = cone4(-1, 1, 0);
        let b = cone4(-1, 1, 3);
        assert!(causally_disjoint(&a, &b).unwrap());
        assert!(!causally_disjoint(&a, &a).unwrap());
        assert!(!causally_disjoint(&a, &cone4(-1, 1, 2)).unwrap());
    }

    #[test]
    fn timelike_stacked_cones_are_not_disjoint() {
        assert!(!causally_disjoint(&cone4(-1, 1, 0), &cone4(5, 7, 0)).unwrap());
    }

    #[test]
    fn cross_slice_and_chart_errors() {
        let b1 = ball(0, 0, 1);
        let b2 = Region::ball(Point::from_ints(Chart::Slice(2), &[0, 0]), int(1), int(1)).unwrap();
        assert_eq!(includes(&b1, &b2), Err(RegionError::CrossSlice));
        assert_eq!(includes(&b1, &cone4(-1, 1, 0)), Err(RegionError::ChartMismatch));
    }

    #[test]
    fn invalid_cone_rejected() {
        let p = Point::from_ints(Chart::Minkowski(2), &[0, 0]);
        let q = Point::from_ints(Chart::Minkowski(2), &[1, 1]);
        assert!(Region::double_cone(p, q).is_err());
    }

    #[test]
    fn circle_arcs_combinatorics() {
        let arc = |k: i64, a: Rat| Region::cap(Point::on_circle(rat(k, 12)), a).unwrap();
        // quarter-step apart: 2 * (1/12 turn) = 1/6 pi
        assert!(arc(0, rat(1, 12)).subset_of(&arc(1, rat(1, 4))).unwrap());
        assert!(!arc(0, rat(1, 12)).proper_subset_of(&arc(1, rat(1, 4))).unwrap());
        assert!(causally_disjoint(&arc(0, rat(1, 12)), &arc(6, rat(1, 12))).unwrap());
        assert!(!causally_disjoint(&arc(0, rat(1, 12)), &arc(1, rat(1, 12))).unwrap());
    }

    #[test]
    fn identity_action_is_trivial() {
        let g = group(GroupName::Dihedral, 2, 0);
        assert_eq!(act(&g[0], &ball(1, 0, 1)).unwrap(), ball(1, 0, 1));
    }
}
