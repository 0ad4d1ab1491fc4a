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

//! Pauli-string observable nets over index posets.

pub mod f2;
pub mod net;
pub mod pauli;

pub use f2::Subspace;
pub use net::{borchers_witness, check_net, commutant, generated_algebra, BorchersOutcome, Net, NetAlgebra, NetError, NetModel, NetReport};
pub use pauli::{PauliElement, PauliError, PauliString, SitePerm};
