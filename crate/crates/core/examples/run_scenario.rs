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

//! Runs a bundled scenario in process and prints its summary.

use std::path::Path;

use sectorkit::cli::{run, Config, Overrides};
use sectorkit::cli::Suite;

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "arc-circle".into());
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(format!("{name}.json"));
    let config = Config::parse(&std::fs::read_to_string(path).unwrap()).unwrap();
    let report = run(Suite::All, &config, Overrides::default()).unwrap();
    print!("{}", report.summary());
}
