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

//! Axiom verdicts and first homology for the circle-arc and sphere-cap samples.

use sectorkit::poset::{build_poset, check_axioms, h1, pi1_trivial, Budget};
use sectorkit::regions::{sample_family, FamilyParams};

fn main() {
    let samples = [
        ("circle arcs", r#"{"kind":"circle-arcs","n":12,"radii":["1/12","1/6"]}"#),
        (
            "sphere caps",
            r#"{"kind":"sphere-caps","layers":[{"orbit":"faces","radius":"1/12"},{"orbit":"edges","radius":"1/3"},{"orbit":"vertices","radius":"2/3"}]}"#,
        ),
    ];
    for (name, json) in samples {
        let params: FamilyParams = serde_json::from_str(json).unwrap();
        let poset = build_poset(&sample_family(&params).unwrap()).unwrap();
        let report = check_axioms(&poset, Budget::default());
        println!("{name}: {} elements", poset.len());
        for (k, v) in report.verdicts() {
            println!("  {k} {}", v.name());
        }
        let h = h1(&poset).unwrap();
        println!("  H1 rank {} torsion {:?}", h.rank, h.torsion);
        println!("  pi1 {}", serde_json::to_string(&pi1_trivial(&poset, 0, Budget::default())).unwrap());
    }
}
