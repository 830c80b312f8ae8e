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

//! Stabilizer-versus-dense cross-checks over random Clifford grid points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ansatz::{prepare_state, AnsatzTemplate, CliffordParams};
use crate::cost::energy;
use crate::error::Result;
use crate::io::LevelRecord;
use crate::oracle::{dense_expectation, dense_overlap_sq, dense_state, hamiltonian_spectrum};
use crate::pauli::{PauliString, PauliSumHamiltonian};
use crate::tableau::{overlap_sq, overlap_sq_fast};

pub const AGREEMENT_TOL: f64 = 1e-10;
pub const VARIATIONAL_SLACK: f64 = 1e-9;

pub fn random_params(template: &AnsatzTemplate, rng: &mut impl Rng) -> CliffordParams {
    CliffordParams::new((0..template.parameter_count()).map(|_| rng.gen_range(0..4u8)).collect())
        .expect("digits in range")
}

/// `terms` distinct random Pauli strings (identity allowed) with coefficients
/// uniform in `[-2, 2]`.
pub fn random_hamiltonian(n_qubits: usize, terms: usize, rng: &mut impl Rng) -> PauliSumHamiltonian {
    let mask = if n_qubits == 64 { u64::MAX } else { (1u64 << n_qubits) - 1 };
    let list: Vec<(f64, PauliString)> = (0..terms)
        .map(|_| {
            let p = PauliString::from_bits(n_qubits, rng.gen::<u64>() & mask, rng.gen::<u64>() & mask, 0)
                .expect("masked bits");
            (rng.gen_range(-2.0..=2.0), p)
        })
        .collect();
    PauliSumHamiltonian::new(list).expect("non-empty, uniform width")
}

#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub energy_checks: usize,
    pub overlap_checks: usize,
    pub max_energy_deviation: f64,
    pub max_overlap_deviation: f64,
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Draws `samples` random grid points and compares, against dense
/// simulation: the energy of every Hamiltonian in `hamiltonians` (and the
/// variational bound), and the squared overlap of `samples` random state
/// pairs along both stabilizer overlap paths.
pub fn cross_validate(
    template: &AnsatzTemplate,
    hamiltonians: &[PauliSumHamiltonian],
    samples: usize,
    seed: u64,
) -> Result<ValidationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ValidationReport::default();
    let minima = hamiltonians
        .iter()
        .map(|h| hamiltonian_spectrum(h).map(|s| s[0]))
        .collect::<Result<Vec<_>>>()?;
    for _ in 0..samples {
        let a = random_params(template, &mut rng);
        let b = random_params(template, &mut rng);
        let (ta, tb) = (prepare_state(template, &a)?, prepare_state(template, &b)?);
        let (va, vb) = (dense_state(template, &a.angles())?, dense_state(template, &b.angles())?);
        for (h, &lambda_min) in hamiltonians.iter().zip(&minima) {
            let stab = energy(&ta, h)?;
            let dense = dense_expectation(&va, h)?;
            let dev = (stab - dense).abs();
            report.max_energy_deviation = report.max_energy_deviation.max(dev);
            report.energy_checks += 1;
            if dev > AGREEMENT_TOL {
                report.failures.push(format!("energy at {a}: stabilizer {stab}, dense {dense}"));
            }
            if stab < lambda_min - VARIATIONAL_SLACK {
                report
                    .failures
                    .push(format!("energy at {a} is {stab}, below the ground energy {lambda_min}"));
            }
        }
        let reference = overlap_sq(&ta, &tb)?;
        let fast = overlap_sq_fast(&ta, &tb)?;
        let dense = dense_overlap_sq(&va, &vb)?;
        let dev = (reference - dense).abs();
        report.max_overlap_deviation = report.max_overlap_deviation.max(dev);
        report.overlap_checks += 1;
        if dev > AGREEMENT_TOL || fast != reference {
            report.failures.push(format!(
                "overlap {a} vs {b}: projector {reference}, intersection {fast}, dense {dense}"
            ));
        }
    }
    Ok(report)
}

/// Largest allowed per-level error in a reference sweep, in Hartree.
pub const SWEEP_ERROR_BOUND: f64 = 0.1;

/// Checks a sweep against an error profile: every level's `abs_error_ha`
/// is at most `bound`, and at the first and last grid point it is strictly
/// below that level's maximum over the grid.
///
/// Grid order is the order in which point labels first appear. Returns the
/// list of violations.
pub fn check_sweep_errors(records: &[LevelRecord], bound: f64) -> std::result::Result<(), Vec<String>> {
    let mut problems = Vec::new();
    let mut labels: Vec<&str> = Vec::new();
    for r in records {
        if !labels.contains(&r.point_label.as_str()) {
            labels.push(&r.point_label);
        }
    }
    if labels.len() < 3 {
        problems.push(format!("need at least 3 grid points, got {}", labels.len()));
    }
    let max_level = records.iter().map(|r| r.level).max().unwrap_or(0);
    for level in 0..=max_level {
        let mut errs = Vec::with_capacity(labels.len());
        for label in &labels {
            let rec = records.iter().find(|r| r.level == level && r.point_label == *label);
            match rec.and_then(|r| r.abs_error_ha) {
                Some(e) => errs.push(e),
                None => problems.push(format!("level {level} at {label:?}: no exact reference")),
            }
        }
        if errs.len() != labels.len() || errs.is_empty() {
            continue;
        }
        let worst = errs.iter().copied().fold(0.0, f64::max);
        for (label, e) in labels.iter().zip(&errs) {
            if *e > bound {
                problems.push(format!("level {level} at {label:?}: error {e} exceeds {bound}"));
            }
        }
        for i in [0, errs.len() - 1] {
            if errs[i] >= worst {
                problems.push(format!(
                    "level {level}: endpoint {:?} error {} is not below the grid maximum {worst}",
                    labels[i], errs[i]
                ));
            }
        }
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(problems)
    }
}
