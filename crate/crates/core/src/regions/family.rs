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

//! Finite region families: deterministic samplers, closure checks and JSON round trips.

use super::exact::{int, Rat};
use super::symmetry::{group, GroupName, Symmetry};
use super::{Chart, Model, Point, Region, RegionError, RegionModel};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::HashMap;

/// Parses `p` or `p/q`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse::<BigInt>().ok()?, q.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    if q == BigInt::from(0) {
        None
    } else {
        Some(Rat::new(p, q))
    }
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orbit {
    /// The 6 points `±e_i`.
    Vertices,
    /// The 12 directions `(±1, ±1, 0)` and permutations.
    Edges,
    /// The 8 directions `(±1, ±1, ±1)`.
    Faces,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapLayer {
    pub orbit: Orbit,
    /// Angular radius in units of pi.
    pub radius: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointLayer {
    pub point: Vec<i64>,
    pub radius: String,
}

/// Sampling parameters. Radii are rational strings; cap and arc radii are in units of pi.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FamilyParams {
    /// Balls centred on the integer points of `[-e_1, e_1] x ... x [-e_d, e_d]`.
    SliceGrid { extent: Vec<i64>, radii: Vec<String>, group: GroupName },
    /// Double cones whose bases are the balls of a slice grid at time 0.
    ConeGrid { extent: Vec<i64>, radii: Vec<String>, group: GroupName },
    /// Double cones at time 0 centred on the signed-permutation orbits of integer points.
    ConeOrbits { layers: Vec<PointLayer>, group: GroupName },
    /// `n` arcs per radius, placed so that arc endpoints sit on the `n`-point grid.
    CircleArcs { n: i64, radii: Vec<String> },
    /// Caps centred on octahedral orbits, one radius per layer.
    SphereCaps { layers: Vec<CapLayer> },
}

/// Integer lattice sites underlying a grid family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub points: Vec<Vec<i64>>,
}

impl Lattice {
    pub fn index_of(&self, p: &[i64]) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }
}

#[derive(Clone, Debug)]
pub struct RegionFamily<R = Region> {
    pub chart: Chart,
    pub ids: Vec<String>,
    pub regions: Vec<R>,
    pub symmetries: Vec<Symmetry>,
    pub lattice: Option<Lattice>,
}

impl<R: RegionModel> RegionFamily<R> {
    /// Checks closure under the symmetries and that some pair is disjoint.
    pub fn new(
        chart: Chart,
        ids: Vec<String>,
        regions: Vec<R>,
        symmetries: Vec<Symmetry>,
        lattice: Option<Lattice>,
    ) -> Result<Self, RegionError> {
        if regions.is_empty() {
            return Err(RegionError::EmptyFamily);
        }
        let family = Self { chart, ids, regions, symmetries, lattice };
        family.action_table()?;
        let mut found = false;
        'outer: for (i, a) in family.regions.iter().enumerate() {
            for b in &family.regions[i + 1..] {
                if a.disjoint_from(b)? {
                    found = true;
                    break 'outer;
                }
            }
        }
        if !found {
            return Err(RegionError::DisjointnessUnavailable);
        }
        Ok(family)
    }

    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    /// `table[g][i]` is the index of `g · region_i`.
    pub fn action_table(&self) -> Result<Vec<Vec<usize>>, RegionError> {
        let index: HashMap<&R, usize> = self.regions.iter().enumerate().map(|(i, r)| (r, i)).collect();
        self.symmetries
            .iter()
            .map(|g| {
                self.regions
                    .iter()
                    .enumerate()
                    .map(|(i, r)| {
                        let moved = r.act(g)?;
                        index.get(&moved).copied().ok_or_else(|| RegionError::NotClosed {
                            region: self.ids[i].clone(),
                            symmetry: g.id.clone(),
                        })
                    })
                    .collect()
            })
            .collect()
    }
}

fn parse_radii(radii: &[String]) -> Result<Vec<Rat>, RegionError> {
    let mut out = Vec::new();
    for r in radii {
        out.push(parse_rat(r).ok_or_else(|| RegionError::Invalid(format!("bad rational {r:?}")))?);
    }
    Ok(out)
}

/// Double cone whose base is the ball of radius `r` about `p` at time 0.
fn cone_at(p: &[i64], r: &Rat) -> Result<Region, RegionError> {
    let chart = Chart::Minkowski(p.len() + 1);
    let mut lo = vec![-r.clone()];
    let mut hi = vec![r.clone()];
    lo.extend(p.iter().map(|c| int(*c)));
    hi.extend(p.iter().map(|c| int(*c)));
    Region::double_cone(Point::new(chart, lo), Point::new(chart, hi))
}

/// Distinct images of `v` under coordinate permutations and sign changes, sorted.
fn signed_permutations(v: &[i64]) -> Vec<Vec<i64>> {
    let mut out = std::collections::BTreeSet::new();
    let n = v.len();
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        for signs in 0..(1u32 << n) {
            out.insert(
                idx.iter().enumerate().map(|(k, i)| if signs >> k & 1 == 1 { -v[*i] } else { v[*i] }).collect::<Vec<_>>(),
            );
        }
        // next permutation in lexicographic order
        let Some(k) = (0..n.saturating_sub(1)).rev().find(|k| idx[*k] < idx[k + 1]) else { break };
        let l = (k + 1..n).rev().find(|l| idx[k] < idx[*l]).expect("successor exists");
        idx.swap(k, l);
        idx[k + 1..].reverse();
    }
    out.into_iter().collect()
}

fn box_points(extent: &[i64]) -> Vec<Vec<i64>> {
    let mut pts = vec![vec![]];
    for &e in extent {
        let mut next = Vec::new();
        for p in &pts {
            for c in -e..=e {
                let mut q = p.clone();
                q.push(c);
                next.push(q);
            }
        }
        pts = next;
    }
    pts
}

fn orbit_points(o: Orbit) -> Vec<[i64; 3]> {
    let mut pts: Vec<[i64; 3]> = Vec::new();
    for x in -1..=1i64 {
        for y in -1..=1i64 {
            for z in -1..=1i64 {
                let nz = [x, y, z].iter().filter(|c| **c != 0).count();
                let want = match o {
                    Orbit::Vertices => 1,
                    Orbit::Edges => 2,
                    Orbit::Faces => 3,
                };
                if nz == want {
                    pts.push([x, y, z]);
                }
            }
        }
    }
    pts
}

/// Builds the family described by `params`.
pub fn sample_family(params: &FamilyParams) -> Result<RegionFamily, RegionError> {
    let mut regions = Vec::new();
    let (chart, symmetries, lattice, prefix) = match params {
        FamilyParams::SliceGrid { extent, radii, group: g } | FamilyParams::ConeGrid { extent, radii, group: g } => {
            let cone = matches!(params, FamilyParams::ConeGrid { .. });
            let dim = extent.len();
            if dim == 0 || extent.iter().any(|e| *e < 0) {
                return Err(RegionError::EmptyFamily);
            }
            let pts = box_points(extent);
            for r in parse_radii(radii)? {
                for p in &pts {
                    regions.push(if cone {
                        cone_at(p, &r)?
                    } else {
                        Region::ball(Point::from_ints(Chart::Slice(dim), p), r.clone(), int(0))?
                    });
                }
            }
            let chart = if cone { Chart::Minkowski(dim + 1) } else { Chart::Slice(dim) };
            (chart, group(*g, dim, 0), Some(Lattice { points: pts }), if cone { "c" } else { "b" })
        }
        FamilyParams::ConeOrbits { layers, group: g } => {
            let dim = layers.first().map_or(0, |l| l.point.len());
            if dim == 0 || layers.iter().any(|l| l.point.len() != dim) {
                return Err(RegionError::Invalid("orbit layers need points of one positive dimension".into()));
            }
            for layer in layers {
                let r = parse_radii(std::slice::from_ref(&layer.radius))?.remove(0);
                for p in signed_permutations(&layer.point) {
                    regions.push(cone_at(&p, &r)?);
                }
            }
            (Chart::Minkowski(dim + 1), group(*g, dim, 0), None, "d")
        }
        FamilyParams::CircleArcs { n, radii } => {
            if *n <= 0 {
                return Err(RegionError::EmptyFamily);
            }
            for a in parse_radii(radii)? {
                // shift by the fractional number of steps in a half-width so endpoints hit the grid
                let half_steps = &a * int(*n) / int(2);
                let offset = &half_steps - half_steps.floor();
                for k in 0..*n {
                    let turn = (int(k) + &offset) / int(*n);
                    regions.push(Region::cap(Point::on_circle(turn), a.clone())?);
                }
            }
            (Chart::Sphere(1), group(GroupName::Cyclic, 0, *n), None, "a")
        }
        FamilyParams::SphereCaps { layers } => {
            for layer in layers {
                let a = parse_radii(std::slice::from_ref(&layer.radius))?.remove(0);
                for p in orbit_points(layer.orbit) {
                    let v: Vec<Rat> = p.iter().map(|c| int(*c)).collect();
                    regions.push(Region::cap(Point::direction(&v)?, a.clone())?);
                }
            }
            (Chart::Sphere(2), group(GroupName::Octahedral, 3, 0), None, "k")
        }
    };
    let ids = (0..regions.len()).map(|i| format!("{prefix}{i:03}")).collect();
    RegionFamily::new(chart, ids, regions, symmetries, lattice)
}

fn model_name(m: &Model) -> &'static str {
    match m {
        Model::ApexDoubleCone { .. } => "apex-double-cone",
        Model::SliceBall { .. } => "slice-ball",
        Model::DirectionCap { .. } => "direction-cap",
    }
}

fn model_params(m: &Model) -> Vec<String> {
    let pts = |p: &Point| p.coords.iter().map(fmt_rat).collect::<Vec<_>>();
    match m {
        Model::ApexDoubleCone { minus, plus } => [pts(minus), pts(plus)].concat(),
        Model::SliceBall { center, radius, slice_time } => {
            [pts(center), vec![fmt_rat(radius), fmt_rat(slice_time)]].concat()
        }
        Model::DirectionCap { center, angle } => [pts(center), vec![fmt_rat(angle)]].concat(),
    }
}

impl RegionFamily<Region> {
    pub fn to_json(&self) -> Value {
        let regions: Vec<Value> = self
            .ids
            .iter()
            .zip(&self.regions)
            .map(|(id, r)| json!({"id": id, "model": model_name(&r.model), "params": model_params(&r.model)}))
            .collect();
        json!({
            "chart": self.chart,
            "regions": regions,
            "symmetries": self.symmetries,
            "lattice": self.lattice.as_ref().map(|l| l.points.clone()),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, RegionError> {
        let bad = |m: &str| RegionError::Invalid(m.to_string());
        let chart: Chart = serde_json::from_value(v["chart"].clone()).map_err(|e| bad(&e.to_string()))?;
        let symmetries: Vec<Symmetry> =
            serde_json::from_value(v["symmetries"].clone()).map_err(|e| bad(&e.to_string()))?;
        let lattice: Option<Vec<Vec<i64>>> =
            serde_json::from_value(v["lattice"].clone()).map_err(|e| bad(&e.to_string()))?;
        let mut ids = Vec::new();
        let mut regions = Vec::new();
        for r in v["regions"].as_array().ok_or_else(|| bad("regions must be a list"))? {
            ids.push(r["id"].as_str().ok_or_else(|| bad("region id"))?.to_string());
            let params: Vec<Rat> = r["params"]
                .as_array()
                .ok_or_else(|| bad("params"))?
                .iter()
                .map(|p| p.as_str().and_then(parse_rat).ok_or_else(|| bad("param")))
                .collect::<Result<_, _>>()?;
            let d = match chart {
                Chart::Minkowski(d) | Chart::Slice(d) => d,
                Chart::Sphere(1) => 1,
                Chart::Sphere(_) => 3,
            };
            let need = match r["model"].as_str() {
                Some("apex-double-cone") => 2 * d,
                Some("slice-ball") => d + 2,
                Some("direction-cap") => d + 1,
                _ => return Err(bad("unknown model")),
            };
            if params.len() != need {
                return Err(bad("wrong parameter count"));
            }
            let region = match r["model"].as_str() {
                Some("apex-double-cone") => Region::double_cone(
                    Point::new(chart, params[..d].to_vec()),
                    Point::new(chart, params[d..].to_vec()),
                )?,
                Some("slice-ball") => {
                    Region::ball(Point::new(chart, params[..d].to_vec()), params[d].clone(), params[d + 1].clone())?
                }
                _ => {
                    let center = if chart == Chart::Sphere(1) {
                        Point::on_circle(params[0].clone())
                    } else {
                        Point::direction(&params[..3])?
                    };
                    Region::cap(center, params[d].clone())?
                }
            };
            regions.push(region);
        }
        Self::new(chart, ids, regions, symmetries, lattice.map(|points| Lattice { points }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(extent: Vec<i64>, radii: &[&str], g: GroupName) -> FamilyParams {
        FamilyParams::SliceGrid { extent, radii: radii.iter().map(|s| s.to_string()).collect(), group: g }
    }

    #[test]
    fn planar_grid_has_243_balls() {
        let f = sample_family(&grid(vec![4, 4], &["0", "1", "2"], GroupName::Dihedral)).unwrap();
        assert_eq!(f.len(), 81 * 3);
        assert_eq!(f.symmetries.len(), 8);
        assert!(f.action_table().is_ok());
    }

    #[test]
    fn circle_has_24_arcs() {
        let f = sample_family(&FamilyParams::CircleArcs { n: 12, radii: vec!["1/12".into(), "1/6".into()] }).unwrap();
        assert_eq!(f.len(), 24);
        assert_eq!(f.symmetries.len(), 12);
    }

    #[test]
    fn single_site_box_has_no_disjoint_pair() {
        let e = sample_family(&grid(vec![0, 0], &["0"], GroupName::Dihedral)).unwrap_err();
        assert_eq!(e, RegionError::DisjointnessUnavailable);
    }

    #[test]
    fn empty_radius_list_is_empty_family() {
        let e = sample_family(&grid(vec![1, 1], &[], GroupName::Dihedral)).unwrap_err();
        assert_eq!(e, RegionError::EmptyFamily);
    }

    #[test]
    fn oblong_box_is_not_closed_under_the_square_group() {
        let e = sample_family(&grid(vec![2, 1], &["0"], GroupName::Dihedral)).unwrap_err();
        assert!(matches!(e, RegionError::NotClosed { .. }));
    }

    #[test]
    fn json_round_trip_is_exact() {
        for p in [
            grid(vec![1, 1], &["0", "1/2"], GroupName::Dihedral),
            FamilyParams::ConeGrid { extent: vec![2], radii: vec!["1/10".into()], group: GroupName::Reflection },
            FamilyParams::CircleArcs { n: 6, radii: vec!["1/6".into()] },
            FamilyParams::SphereCaps {
                layers: vec![
                    CapLayer { orbit: Orbit::Vertices, radius: "1/6".into() },
                    CapLayer { orbit: Orbit::Faces, radius: "1/6".into() },
                ],
            },
        ] {
            let f = sample_family(&p).unwrap();
            let text = serde_json::to_string(&f.to_json()).unwrap();
            let back = RegionFamily::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            assert_eq!(back.regions, f.regions);
            assert_eq!(back.ids, f.ids);
            assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), text);
        }
    }
}
