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

//! Frozen values computed by hand or by independent scripts.

use std::str::FromStr;

use num_bigint::BigInt;

use sectorkit::paulinet::{commutant, generated_algebra, NetAlgebra, PauliElement, PauliString};
use sectorkit::poset::smith::smith_diagonal;
use sectorkit::poset::{build_poset, check_axioms, h1, Budget, IndexPoset};
use sectorkit::regions::{sample_family, FamilyParams};
use sectorkit::scalar::Gauss;

fn poset(json: &str) -> IndexPoset {
    let params: FamilyParams = serde_json::from_str(json).unwrap();
    build_poset(&sample_family(&params).unwrap()).unwrap()
}

#[test]
fn textbook_smith_form() {
    let m = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]];
    let m: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|x| BigInt::from(*x)).collect()).collect();
    assert_eq!(smith_diagonal(m), vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
}

#[test]
fn single_qubit_products() {
    let x = PauliElement::from_str("( 1 + 0 i ) X1").unwrap();
    let y = PauliElement::from_str("( 1 + 0 i ) Y1").unwrap();
    let z = PauliElement::from_str("( 1 + 0 i ) Z1").unwrap();
    assert_eq!(x.mul(&y), z.scale(Gauss::i()));
    assert_eq!(y.mul(&x), z.scale(-Gauss::i()));
    assert_eq!(x.mul(&x), PauliElement::identity());
    let h = x.add(&z).scale(Gauss::real(sectorkit::scalar::Q::new(1, 2)));
    assert_eq!(h.mul(&h), PauliElement::identity().scale(Gauss::real(sectorkit::scalar::Q::new(1, 2))));
}

#[test]
fn commutant_of_one_x_on_two_qubits() {
    let a = generated_algebra(&[PauliString::x_on(0)], 0b11).unwrap();
    let c = commutant(&a, &NetAlgebra::full(0b11));
    assert_eq!(c.dim(), 3);
    for s in ["X1", "X2", "Z2", "X1 Y2"] {
        assert!(c.contains_string(&PauliString::from_str(s).unwrap()), "{s}");
    }
    assert!(!c.contains_string(&PauliString::from_str("Z1").unwrap()));
}

#[test]
fn sample_sizes_and_homology() {
    let cases = [
        (r#"{"kind":"slice-grid","extent":[2,2],"radii":["0","1","2"],"group":"dihedral"}"#, 75, 8, 0),
        (r#"{"kind":"slice-grid","extent":[2,2],"radii":["0","1"],"group":"dihedral"}"#, 50, 8, 56),
        (r#"{"kind":"cone-grid","extent":[4],"radii":["1/10","11/10","21/10"],"group":"trivial"}"#, 27, 1, 0),
        (r#"{"kind":"circle-arcs","n":12,"radii":["1/12","1/6"]}"#, 24, 12, 1),
        (r#"{"kind":"sphere-caps","layers":[{"orbit":"faces","radius":"1/12"},{"orbit":"edges","radius":"1/3"},{"orbit":"vertices","radius":"2/3"}]}"#, 26, 24, 0),
    ];
    for (json, elements, group, rank) in cases {
        let p = poset(json);
        assert_eq!((p.len(), p.group_len()), (elements, group), "{json}");
        let h = h1(&p).unwrap();
        assert_eq!((h.rank, h.torsion.len()), (rank, 0), "{json}");
    }
}

#[test]
fn axiom_verdicts_of_the_bundled_samples() {
    let names = |p: &IndexPoset| check_axioms(p, Budget::default()).verdicts().map(|(_, v)| v.name());
    let grid = poset(r#"{"kind":"slice-grid","extent":[2,2],"radii":["0","1","2"],"group":"dihedral"}"#);
    let r = "holds-relative-to-sample";
    assert_eq!(names(&grid), [r, "holds", "fails", r, "holds", "fails", "holds"]);
    let arcs = poset(r#"{"kind":"circle-arcs","n":12,"radii":["1/12","1/6"]}"#);
    assert_eq!(names(&arcs), ["fails", "holds", r, r, "holds", "holds", "fails"]);
}
