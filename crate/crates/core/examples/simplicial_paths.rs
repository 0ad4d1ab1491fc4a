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

//! Builds a path around the circle-arc poset and searches for homotopies to shorter paths.

use sectorkit::poset::build_poset;
use sectorkit::regions::{sample_family, FamilyParams};
use sectorkit::simplicial::{homotopic, Canonical, HomotopyVerdict, Path, SearchCap};

fn main() {
    let params: FamilyParams = serde_json::from_str(r#"{"kind":"circle-arcs","n":12,"radii":["1/12","1/6"]}"#).unwrap();
    let p = build_poset(&sample_family(&params).unwrap()).unwrap();
    let canon = Canonical::new(&p);

    // walk from a000 to a002 through a001 and compare with the direct edge, if any
    let (a, b, c) = (p.index_of("a000").unwrap(), p.index_of("a001").unwrap(), p.index_of("a002").unwrap());
    let first = Path::new(vec![canon.edge(a, b).unwrap(), canon.edge(b, c).unwrap()]).unwrap();
    println!("path {}", first.to_json(&p));
    for n in canon.neighbours(a).iter().take(5) {
        println!("  a000 - {}", p.ids[*n]);
    }
    let back = Path::compose(&first.reverse(), &first).unwrap();
    match homotopic(&back, &Path::trivial(a), &p, &canon, SearchCap::moves(6)).unwrap() {
        HomotopyVerdict::Yes(moves) => println!("there and back contracts in {} moves", moves.len()),
        HomotopyVerdict::NoWithinCap => println!("no contraction within the cap"),
    }
}
