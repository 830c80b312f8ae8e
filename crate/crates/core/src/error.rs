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

use std::path::PathBuf;

/// Errors produced anywhere in the solver pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid Pauli label {label:?}: {reason}")]
    InvalidLabel { label: String, reason: String },
    #[error("qubit count mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("qubit count must be in 1..={max}, got {got}")]
    QubitCount { got: usize, max: usize },
    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitOutOfRange { index: usize, n_qubits: usize },
    #[error("two-qubit gate needs distinct qubits, got {0} twice")]
    RepeatedQubit(usize),
    #[error("rotation multiple k={0} outside 0..=3")]
    RotationMultiple(i64),
    #[error("parameter vector has {found} entries, template expects {expected}")]
    ParamLength { expected: usize, found: usize },
    #[error("parameter count {count} exceeds exhaustive cap {cap}")]
    ExhaustiveCap { count: usize, cap: usize },
    #[error("empty Hamiltonian")]
    EmptyHamiltonian,
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("manifest: {0}")]
    Manifest(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("state vector is not normalized (norm² = {0})")]
    NotNormalized(f64),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed results file: {0}")]
    Results(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
