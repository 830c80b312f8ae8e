// Copyright 2026 The clifford-vqd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Clifford-restricted variational quantum deflation.
//!
//! Low-lying eigenstates of a Pauli-sum Hamiltonian are approximated by
//! searching the stabilizer states a parameterized ansatz reaches when every
//! rotation angle is a multiple of π/2, one level at a time, with overlap
//! penalties against the levels already found. A dense exact-diagonalization
//! oracle provides reference energies, and an optional continuous stage
//! refines the discrete optimum on the full state vector.

pub mod ansatz;
pub mod cost;
pub mod error;
pub mod io;
pub mod oracle;
pub mod pauli;
pub mod refine;
pub mod search;
pub mod tableau;
pub mod validate;

pub use ansatz::{prepare_state, AnsatzTemplate, CliffordParams, RotationAxis};
pub use cost::{clifford_vqd_cost, default_beta, energy, DeflationContext, LevelResult};
pub use error::{Error, Result};
pub use io::{load_hamiltonian, load_manifest, write_results, OutputFormat};
pub use pauli::{parse_hamiltonian, parse_pauli, PauliString, PauliSumHamiltonian};
pub use search::{solve_ladder, solve_level, sweep, LadderResult, SearchConfig, Strategy};
pub use tableau::{overlap_sq, overlap_sq_fast, Gate, StabilizerTableau};
