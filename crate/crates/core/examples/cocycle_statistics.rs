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

//! Verifies a bosonic and a fermionic charge-pair cocycle and prints their statistics.

use std::sync::Arc;

use sectorkit::cocycle::{centre_sites, charge_pair, conjugate, statistics, verify_cocycle, Character, Charge, Frame, StatisticsOptions, VerifyOptions};
use sectorkit::paulinet::{Net, NetModel};
use sectorkit::poset::build_poset;
use sectorkit::regions::{sample_family, FamilyParams};

fn run(json: &str, model: NetModel, charge: Charge) {
    let params: FamilyParams = serde_json::from_str(json).unwrap();
    let family = sample_family(&params).unwrap();
    let net = Net::from_family(&family, build_poset(&family).unwrap(), model).unwrap();
    let frame = Arc::new(Frame::new(net));
    let chi = Character::trivial(frame.group_len());
    let x = Arc::new(charge_pair(frame, centre_sites(&family).unwrap(), charge, &chi).unwrap());
    for c in verify_cocycle(&x, &VerifyOptions::seeded(1)).checks {
        println!("  {} over {}: {:?}", c.check, c.instances_checked, c.verdict);
    }
    let s = statistics(&x, &StatisticsOptions { seed: 1, path_pairs: 10 }).unwrap();
    println!("  simple {}, chi {:?}, dimension {:?}, epsilon {:?}", s.simple, s.chi, s.dimension, s.path_dependence.values);
    if let Some(note) = &s.path_dependence.annotation {
        println!("  note: {note}");
    }
    let c = conjugate(&x).unwrap();
    println!("  conjugate checks pass: {}", c.passed());
}

fn main() {
    println!("boson on a 3x3 grid");
    run(r#"{"kind":"slice-grid","extent":[1,1],"radii":["0","1"],"group":"dihedral"}"#, NetModel::EvenZ2, Charge::Z);
    println!("Majorana pair on a chain");
    run(r#"{"kind":"cone-grid","extent":[4],"radii":["1/10","11/10","21/10"],"group":"trivial"}"#, NetModel::EvenFermion, Charge::Majorana);
}
