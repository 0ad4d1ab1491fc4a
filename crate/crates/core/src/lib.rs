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

//! Exact finite models of causal index posets, Pauli observable nets over them, and the
//! category of covariant 1-cocycles with its tensor structure, symmetry and conjugates.

pub mod bits;
pub mod cli;
pub mod cocycle;
pub mod morphisms;
pub mod paulinet;
pub mod poset;
pub mod regions;
pub mod scalar;
pub mod simplicial;
