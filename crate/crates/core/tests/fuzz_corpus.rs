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

//! Replays the checked-in fuzz corpus through the parsers on stable, with
//! the same assertions the fuzz targets make.

use std::fs;
use std::path::PathBuf;

use clifford_vqd::io::{parse_manifest, parse_results_json, results_to_json};
use clifford_vqd::{parse_hamiltonian, parse_pauli, CliffordParams};

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| String::from_utf8_lossy(&fs::read(e.unwrap().path()).unwrap()).into_owned())
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn pauli_seeds() {
    for s in seeds("parse_pauli") {
        if let Ok(p) = parse_pauli(&s) {
            assert_eq!(parse_pauli(&p.label()).unwrap(), p);
            let sq = p.multiply(&p).unwrap();
            assert!(sq.is_identity() && sq.phase_ipow() == 0);
        }
    }
}

#[test]
fn hamiltonian_seeds() {
    let mut parsed = 0;
    for s in seeds("parse_hamiltonian") {
        if let Ok(h) = parse_hamiltonian(&s) {
            parsed += 1;
            assert!(h.terms().iter().all(|(c, p)| c.is_finite() && p.n_qubits() == h.n_qubits()));
        }
    }
    assert!(parsed >= 2);
}

#[test]
fn manifest_seeds() {
    for s in seeds("parse_manifest") {
        if let Ok(m) = parse_manifest(&s) {
            assert!(m.levels >= 1 && !m.points.is_empty());
        }
    }
}

#[test]
fn results_json_seeds() {
    let mut parsed = 0;
    for s in seeds("parse_results_json") {
        if let Ok(doc) = parse_results_json(&s) {
            parsed += 1;
            assert_eq!(parse_results_json(&results_to_json(&doc)).unwrap(), doc);
        }
    }
    assert!(parsed >= 1);
}

#[test]
fn params_seeds() {
    for s in seeds("params_from_str") {
        if let Ok(p) = s.parse::<CliffordParams>() {
            assert_eq!(p.to_string(), s);
        }
    }
}
