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

use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sectorkit::cli::Config;
use sectorkit::cocycle::verify::{homotopic_pairs, random_path};
use sectorkit::cocycle::{centre_sites, charge_pair, Character, CharacterKind, Charge, Cocycle, Frame};
use sectorkit::paulinet::{NetModel, PauliElement, PauliString, Subspace};
use sectorkit::poset::smith::{rational_rank, smith_diagonal};
use sectorkit::poset::{build_poset, IndexPoset};
use sectorkit::regions::{sample_family, FamilyParams};
use sectorkit::scalar::{Gauss, Q};
use sectorkit::simplicial::Path;

fn gauss() -> impl Strategy<Value = Gauss> {
    (-20i128..20, 1i128..6, -20i128..20, 1i128..6).prop_map(|(a, b, c, d)| Gauss::new(Q::new(a, b), Q::new(c, d)))
}

fn string(n: usize) -> impl Strategy<Value = PauliString> {
    let mask = (1u128 << n) - 1;
    (any::<u128>(), any::<u128>()).prop_map(move |(x, z)| PauliString::new(x & mask, z & mask))
}

fn element() -> impl Strategy<Value = PauliElement> {
    prop::collection::vec((gauss(), string(4)), 0..4).prop_map(|terms| terms.into_iter().fold(PauliElement::zero(), |acc, (c, s)| acc.add(&PauliElement::term(c, s))))
}

fn monomial() -> impl Strategy<Value = PauliElement> {
    (0i64..4, string(5)).prop_map(|(k, s)| PauliElement::term(Gauss::i_pow(k), s))
}

fn grid() -> &'static (Arc<Frame>, Arc<Cocycle>) {
    static GRID: OnceLock<(Arc<Frame>, Arc<Cocycle>)> = OnceLock::new();
    GRID.get_or_init(|| {
        let params: FamilyParams = serde_json::from_str(r#"{"kind":"slice-grid","extent":[1,1],"radii":["0","1"],"group":"dihedral"}"#).unwrap();
        let family = sample_family(&params).unwrap();
        let poset = build_poset(&family).unwrap();
        let net = sectorkit::paulinet::Net::from_family(&family, poset, NetModel::EvenZ2).unwrap();
        let frame = Arc::new(Frame::new(net));
        let actions: Vec<_> = family.symmetries.iter().map(|s| s.action.clone()).collect();
        let chi = Character::from_actions(CharacterKind::Determinant, &actions).unwrap();
        let x = Arc::new(charge_pair(frame.clone(), centre_sites(&family).unwrap(), Charge::Z, &chi).unwrap());
        (frame, x)
    })
}

fn posets() -> &'static Vec<IndexPoset> {
    static POSETS: OnceLock<Vec<IndexPoset>> = OnceLock::new();
    POSETS.get_or_init(|| {
        [
            r#"{"kind":"slice-grid","extent":[2,2],"radii":["0","1"],"group":"dihedral"}"#,
            r#"{"kind":"cone-grid","extent":[4],"radii":["1/10","11/10","21/10"],"group":"reflection"}"#,
            r#"{"kind":"circle-arcs","n":12,"radii":["1/12","1/6"]}"#,
        ]
        .iter()
        .map(|s| build_poset(&sample_family(&serde_json::from_str(s).unwrap()).unwrap()).unwrap())
        .collect()
    })
}

proptest! {
    #[test]
    fn gauss_field_laws(a in gauss(), b in gauss(), c in gauss()) {
        prop_assert_eq!((a + b) + c, a + (b + c));
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!((a * b).conj(), a.conj() * b.conj());
        if let Some(inv) = a.inv() {
            prop_assert!((a * inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn gauss_text_round_trip(a in gauss()) {
        prop_assert_eq!(Gauss::from_str(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn pauli_strings_commute_iff_products_agree(a in string(6), b in string(6)) {
        let (ea, eb) = (PauliElement::string(a), PauliElement::string(b));
        let ab = ea.mul(&eb);
        let ba = eb.mul(&ea);
        prop_assert_eq!(a.commutes(&b), ab == ba);
        if !a.commutes(&b) {
            prop_assert_eq!(ab, ba.scale(-Gauss::one()));
        }
        prop_assert_eq!(a.omega(&b), b.omega(&a));
    }

    #[test]
    fn element_algebra_laws(a in element(), b in element(), c in element()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).adjoint(), b.adjoint().mul(&a.adjoint()));
        prop_assert_eq!(a.adjoint().adjoint(), a.clone());
        prop_assert_eq!(PauliElement::from_str(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn monomials_with_unit_phase_are_unitary(u in monomial()) {
        prop_assert!(u.is_unitary());
        prop_assert_eq!(u.adjoint().mul(&u), PauliElement::identity());
    }

    #[test]
    fn subspace_dimensions(us in prop::collection::vec(string(5), 0..6), ws in prop::collection::vec(string(5), 0..6)) {
        let u = Subspace::span(&us);
        let w = Subspace::span(&ws);
        prop_assert_eq!(u.sum(&w).dim() + u.intersect(&w).dim(), u.dim() + w.dim());
        prop_assert!(us.iter().all(|s| u.contains(s)));
        prop_assert_eq!(u.elements().len(), 1 << u.dim());
        let full = Subspace::full((1 << 5) - 1);
        let comm = u.commutant_within(&full);
        // the symplectic form on five qubits is nondegenerate
        prop_assert_eq!(comm.dim() + u.dim(), 10);
        prop_assert_eq!(comm.commutant_within(&full), u.clone());
        prop_assert!(comm.basis().iter().all(|c| us.iter().all(|s| c.commutes(s))));
    }

    #[test]
    fn smith_diagonal_divides_and_has_the_rank(rows in prop::collection::vec(prop::collection::vec(-6i64..6, 4), 1..5)) {
        let m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|x| BigInt::from(*x)).collect()).collect();
        let d = smith_diagonal(m.clone());
        prop_assert_eq!(d.len(), rational_rank(&m));
        prop_assert!(d.iter().all(|x| *x > BigInt::from(0)));
        prop_assert!(d.windows(2).all(|w| (&w[1] % &w[0]) == BigInt::from(0)));
    }

    #[test]
    fn poset_order_and_disjointness(which in 0usize..3, a in 0usize..1000, b in 0usize..1000, c in 0usize..1000, g in 0usize..100) {
        let p = &posets()[which];
        let (a, b, c) = (a % p.len(), b % p.len(), c % p.len());
        prop_assert!(p.leq(a, a));
        prop_assert!(!p.perp(a, a));
        prop_assert_eq!(p.perp(a, b), p.perp(b, a));
        if p.leq(a, b) && p.leq(b, a) {
            prop_assert_eq!(a, b);
        }
        if p.leq(a, b) && p.leq(b, c) {
            prop_assert!(p.leq(a, c));
        }
        // disjointness passes to smaller elements
        if p.perp(b, c) && p.leq(a, b) {
            prop_assert!(p.perp(a, c));
        }
        let g = g % p.group_len();
        prop_assert_eq!(p.leq(a, b), p.leq(p.act(g, a), p.act(g, b)));
        prop_assert_eq!(p.perp(a, b), p.perp(p.act(g, a), p.act(g, b)));
    }

    #[test]
    fn cocycle_values_compose_along_paths(seed in any::<u64>(), len in 1usize..6) {
        let (frame, x) = grid();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_path(frame, &mut rng, len);
        let q = frame.route(p.end(), p.start()).unwrap();
        let loop_value = x.evaluate_path(&Path::compose(&q, &p).unwrap()).unwrap();
        prop_assert_eq!(loop_value, x.evaluate_path(&q).unwrap().mul(&x.evaluate_path(&p).unwrap()));
        prop_assert!(x.evaluate_path(&p).unwrap().is_unitary());
        prop_assert_eq!(x.evaluate_path(&p.reverse()).unwrap(), x.evaluate_path(&p).unwrap().adjoint());
    }

    #[test]
    fn homotopic_paths_have_equal_values(seed in any::<u64>()) {
        let (frame, x) = grid();
        for (a, _, b) in homotopic_pairs(frame, seed, 3, 4) {
            prop_assert_eq!(x.evaluate_path(&a).unwrap(), x.evaluate_path(&b).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn config_round_trips_through_json(seed in any::<u64>(), rows in 1usize..10_000_000, conclusive in any::<bool>()) {
        let text = format!(
            r#"{{"schema_version":1,"name":"p","seed":{seed},"family":{{"kind":"circle-arcs","n":12,"radii":["1/12"]}},"budgets":{{"coset_rows":{rows}}},"require_conclusive":{conclusive}}}"#
        );
        let c = Config::parse(&text).unwrap();
        prop_assert_eq!(c.seed, seed);
        let again = Config::parse(&serde_json::to_string(&c).unwrap()).unwrap();
        prop_assert_eq!(again, c);
    }
}
