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

//! Finite symmetry groups acting on charts: signed coordinate permutations and circle rotations.

use serde::{Deserialize, Serialize};

/// How a symmetry moves points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Action {
    /// Coordinate `i` moves to slot `perm[i]` with factor `signs[i]`. Acts on spatial coordinates
    /// only; a Minkowski time coordinate is left alone.
    Signed { perm: Vec<usize>, signs: Vec<i8> },
    /// Rotation of the circle by `steps / n` of a full turn.
    Turn { steps: i64, n: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Symmetry {
    pub id: String,
    pub action: Action,
}

/// Named groups accepted by the samplers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupName {
    Trivial,
    /// `x -> -x` on a line.
    Reflection,
    /// The 8 symmetries of a square.
    Dihedral,
    /// The 24 rotations of a cube.
    Octahedral,
    /// Rotations of the circle by multiples of `1/n` turn.
    Cyclic,
}

impl Action {
    pub fn identity_signed(dim: usize) -> Self {
        Action::Signed { perm: (0..dim).collect(), signs: vec![1; dim] }
    }

    pub fn apply_int(&self, v: &[i64]) -> Vec<i64> {
        match self {
            Action::Signed { perm, signs } => {
                let mut out = vec![0; v.len()];
                for i in 0..v.len() {
                    out[perm[i]] = signs[i] as i64 * v[i];
                }
                out
            }
            Action::Turn { .. } => panic!("integer vectors are not moved by circle rotations"),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        match (self, other) {
            (Action::Signed { perm: p1, signs: s1 }, Action::Signed { perm: p2, signs: s2 }) => {
                let n = p1.len();
                let mut perm = vec![0; n];
                let mut signs = vec![1; n];
                for i in 0..n {
                    perm[i] = p1[p2[i]];
                    signs[i] = s2[i] * s1[p2[i]];
                }
                Action::Signed { perm, signs }
            }
            (Action::Turn { steps: a, n }, Action::Turn { steps: b, n: m }) => {
                assert_eq!(n, m, "rotations of different circles");
                Action::Turn { steps: (a + b).rem_euclid(*n), n: *n }
            }
            _ => panic!("composing actions of different kinds"),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Action::Signed { perm, signs } => {
                perm.iter().enumerate().all(|(i, p)| i == *p) && signs.iter().all(|s| *s == 1)
            }
            Action::Turn { steps, n } => steps.rem_euclid(*n) == 0,
        }
    }

    fn determinant(&self) -> i64 {
        match self {
            Action::Signed { perm, signs } => {
                let mut sign: i64 = signs.iter().map(|s| *s as i64).product();
                let mut seen = vec![false; perm.len()];
                for start in 0..perm.len() {
                    if seen[start] {
                        continue;
                    }
                    let mut len = 0;
                    let mut j = start;
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
            Action::Turn { .. } => 1,
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..n {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out.sort();
    out
}

/// All signed permutations of `dim` coordinates, identity first, sorted otherwise.
fn signed_permutations(dim: usize, rotations_only: bool) -> Vec<Action> {
    let mut out = Vec::new();
    for perm in permutations(dim) {
        for mask in 0..(1u32 << dim) {
            let signs: Vec<i8> = (0..dim).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            let a = Action::Signed { perm: perm.clone(), signs };
            if !rotations_only || a.determinant() == 1 {
                out.push(a);
            }
        }
    }
    out.sort_by_key(|a| !a.is_identity());
    out
}

/// Builds a named group acting on `dim` spatial coordinates (or on a circle with `n` points).
pub fn group(name: GroupName, dim: usize, n: i64) -> Vec<Symmetry> {
    let actions: Vec<Action> = match name {
        GroupName::Trivial => {
            if n > 0 && dim == 0 {
                vec![Action::Turn { steps: 0, n }]
            } else {
                vec![Action::identity_signed(dim)]
            }
        }
        GroupName::Reflection => {
            assert_eq!(dim, 1, "the reflection group acts on a line");
            vec![Action::identity_signed(1), Action::Signed { perm: vec![0], signs: vec![-1] }]
        }
        GroupName::Dihedral => {
            assert_eq!(dim, 2, "the dihedral group acts on a plane");
            signed_permutations(2, false)
        }
        GroupName::Octahedral => {
            assert_eq!(dim, 3, "the octahedral rotation group acts on 3-space");
            signed_permutations(3, true)
        }
        GroupName::Cyclic => (0..n).map(|steps| Action::Turn { steps, n }).collect(),
    };
    actions
        .into_iter()
        .enumerate()
        .map(|(i, action)| Symmetry { id: format!("g{i:02}"), action })
        .collect()
}

/// Multiplication table `table[a][b] = index of a ∘ b`; `None` if the list is not closed.
pub fn multiplication_table(gs: &[Symmetry]) -> Option<Vec<Vec<usize>>> {
    let mut table = vec![vec![0; gs.len()]; gs.len()];
    for (i, a) in gs.iter().enumerate() {
        for (j, b) in gs.iter().enumerate() {
            let c = a.action.compose(&b.action);
            table[i][j] = gs.iter().position(|g| g.action == c)?;
        }
    }
    Some(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        assert_eq!(group(GroupName::Dihedral, 2, 0).len(), 8);
        assert_eq!(group(GroupName::Octahedral, 3, 0).len(), 24);
        assert_eq!(group(GroupName::Cyclic, 0, 12).len(), 12);
        assert_eq!(group(GroupName::Reflection, 1, 0).len(), 2);
    }

    #[test]
    fn groups_are_closed_with_identity_first() {
        for g in [
            group(GroupName::Dihedral, 2, 0),
            group(GroupName::Octahedral, 3, 0),
            group(GroupName::Cyclic, 0, 12),
        ] {
            assert!(g[0].action.is_identity());
            let t = multiplication_table(&g).expect("closed");
            for row in &t {
                assert!(row.contains(&0), "every element has an inverse");
            }
        }
    }

    #[test]
    fn quarter_turn_moves_x_axis_to_y_axis() {
        let g = group(GroupName::Dihedral, 2, 0);
        let quarter = g
            .iter()
            .find(|s| s.action.apply_int(&[1, 0]) == vec![0, 1] && s.action.apply_int(&[0, 1]) == vec![-1, 0])
            .expect("rotation by 90 degrees");
        assert_eq!(quarter.action.apply_int(&[2, 1]), vec![-1, 2]);
    }
}
