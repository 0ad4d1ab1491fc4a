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

//! Compares the full, even-Z2 and even-fermion nets on a 3x3 grid.

use sectorkit::paulinet::{check_net, Net, NetModel};
use sectorkit::poset::build_poset;
use sectorkit::regions::{sample_family, FamilyParams};

fn main() {
    let params: FamilyParams = serde_json::from_str(r#"{"kind":"slice-grid","extent":[1,1],"radii":["0","1"],"group":"dihedral"}"#).unwrap();
    let family = sample_family(&params).unwrap();
    for model in [NetModel::Full, NetModel::EvenZ2, NetModel::EvenFermion] {
        let net = Net::from_family(&family, build_poset(&family).unwrap(), model).unwrap();
        let r = check_net(&net);
        let dual = r.duality.iter().filter(|d| d.verdict.is_pass()).count();
        println!(
            "{model:?}: isotony {}, causality {}, factoriality {}, irreducibility {}, covariance {}, duality on {dual} of {}",
            r.isotony.name(),
            r.causality.name(),
            r.factoriality.name(),
            r.irreducibility.name(),
            r.covariance.name(),
            r.duality.len()
        );
        if let Some(d) = r.duality.iter().find(|d| !d.verdict.is_pass()) {
            println!("  e.g. {}: {}", d.element, serde_json::to_string(&d.verdict).unwrap());
        }
    }
}
