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

//! Localized morphisms of a bosonic cocycle: action on local operators, law checks and the round
//! trip through morphism fields.

use std::str::FromStr;
use std::sync::Arc;

use sectorkit::cocycle::{centre_sites, charge_pair, Character, Charge, Frame};
use sectorkit::morphisms::{functor_z_to_d, localize, morphism_laws, pole_change, round_trip, LocalizeOptions};
use sectorkit::paulinet::{Net, NetModel, PauliElement};
use sectorkit::poset::build_poset;
use sectorkit::regions::{sample_family, FamilyParams};

fn main() {
    let params: FamilyParams = serde_json::from_str(r#"{"kind":"slice-grid","extent":[1,1],"radii":["0","1"],"group":"dihedral"}"#).unwrap();
    let family = sample_family(&params).unwrap();
    let net = Net::from_family(&family, build_poset(&family).unwrap(), NetModel::EvenZ2).unwrap();
    let frame = Arc::new(Frame::new(net));
    let x = Arc::new(charge_pair(frame.clone(), centre_sites(&family).unwrap(), Charge::Z, &Character::trivial(frame.group_len())).unwrap());
    let p = frame.poset();

    let (o, a) = (p.index_of("b004").unwrap(), p.index_of("b013").unwrap());
    let rho = localize(&x, o, LocalizeOptions::default()).unwrap();
    let op = PauliElement::from_str("( 1 + 0 i ) X5").unwrap();
    println!("rho(b004) on {} maps {op} to {}", p.ids[a], rho.apply(a, &op).unwrap());

    for c in morphism_laws(&x).unwrap().checks {
        println!("{} over {}: {:?}", c.check, c.instances_checked, c.verdict);
    }
    let back = round_trip(&x, 0).unwrap();
    println!("round trip identical {}, unitary identity {}", back.identical, back.unitary.is_identity());
    let field = functor_z_to_d(&x).unwrap();
    let change = pole_change(&field, 0, p.len() - 1).unwrap();
    println!("pole change: {:?}", change.check.verdict);
}
