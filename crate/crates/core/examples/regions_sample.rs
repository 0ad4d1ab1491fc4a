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

//! Samples double cones around a 1D lattice and prints inclusion and disjointness between them.

use sectorkit::regions::{causally_disjoint, includes, sample_family, FamilyParams};

fn main() {
    let params: FamilyParams =
        serde_json::from_str(r#"{"kind":"cone-grid","extent":[2],"radii":["1/10","11/10"],"group":"reflection"}"#).unwrap();
    let family = sample_family(&params).unwrap();
    println!("{} regions in {:?}, {} symmetries", family.len(), family.chart, family.symmetries.len());
    for (i, a) in family.regions.iter().enumerate() {
        let mut inside = Vec::new();
        let mut apart = Vec::new();
        for (j, b) in family.regions.iter().enumerate() {
            if i != j && includes(b, a).unwrap() {
                inside.push(family.ids[j].as_str());
            }
            if causally_disjoint(a, b).unwrap() {
                apart.push(family.ids[j].as_str());
            }
        }
        println!("{}: inside [{}], disjoint from [{}]", family.ids[i], inside.join(" "), apart.join(" "));
    }
}
