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

//! Continuous deflation on the dense simulator, started either from the
//! Clifford search optimum or from random angles.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ansatz::AnsatzTemplate;
use crate::cost::pairwise_sum;
use crate::error::{Error, Result};
use crate::oracle::{dense_expectation, dense_overlap_sq, dense_state, hamiltonian_spectrum};
use crate::pauli::PauliSumHamiltonian;
use crate::search::{solve_ladder, SearchConfig};

/// Golden-section search stops once the bracket is this narrow (radians).
const GOLDEN_WIDTH: f64 = 1e-6;
pub const DEFAULT_MAX_SWEEPS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitKind {
    CliffordWarm,
    RandomCold,
}

impl InitKind {
    pub fn as_str(self) -> &'static str {
        match self {
            InitKind::CliffordWarm => "clifford_warm",
            InitKind::RandomCold => "random_cold",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefineReport {
    pub level: usize,
    pub init_kind: InitKind,
    /// Seed of the random start; `None` for the warm arm.
    pub seed: Option<u64>,
    pub init_cost: f64,
    pub final_cost: f64,
    /// Sweeps until the cost came within `tolerance` of the exact level
    /// energy; `None` if that never happened.
    pub iterations_to_tolerance: Option<usize>,
    pub tolerance: f64,
    pub sweeps: usize,
    pub final_angles: Vec<f64>,
}

/// A fixed lower-level state for the dense deflation penalty.
#[derive(Debug, Clone)]
pub struct DenseReference {
    pub state: Vec<Complex64>,
    pub beta: f64,
}

/// Dense deflation cost `⟨ψ(θ)|H|ψ(θ)⟩ + Σ β_i |⟨ref_i|ψ(θ)⟩|²`.
pub fn dense_vqd_cost(
    h: &PauliSumHamiltonian,
    refs: &[DenseReference],
    template: &AnsatzTemplate,
    angles: &[f64],
) -> Result<f64> {
    let psi = dense_state(template, angles)?;
    let e = dense_expectation(&psi, h)?;
    let penalties = refs
        .iter()
        .map(|r| dense_overlap_sq(&r.state, &psi).map(|o| r.beta * o))
        .collect::<Result<Vec<_>>>()?;
    Ok(e + pairwise_sum(&penalties))
}

fn golden_section(lo: f64, hi: f64, f: &mut impl FnMut(f64) -> f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > GOLDEN_WIDTH {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Cyclic coordinate minimization of the dense deflation cost.
///
/// Per coordinate the cost is sampled at the eight angles `mπ/4` (plus the
/// current value), a golden-section search refines around the best sample,
/// and the best point seen is kept, so the cost never increases. Sweeps stop
/// when one improves the cost by less than `tolerance` or after `max_sweeps`.
#[allow(clippy::too_many_arguments)]
pub fn continuous_vqd_level(
    h: &PauliSumHamiltonian,
    refs: &[DenseReference],
    template: &AnsatzTemplate,
    init_angles: &[f64],
    tolerance: f64,
    max_sweeps: usize,
    init_kind: InitKind,
    seed: Option<u64>,
) -> Result<RefineReport> {
    template.check_len(init_angles.len())?;
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(Error::Config(format!("tolerance must be positive, got {tolerance}")));
    }
    let level = refs.len();
    let spectrum = hamiltonian_spectrum(h)?;
    let target = spectrum.get(level).copied();
    // One-sided: with approximate references the deflated cost may dip below the level.
    let within = |c: f64| target.is_some_and(|t| c <= t + tolerance);

    let mut angles = init_angles.to_vec();
    let init_cost = dense_vqd_cost(h, refs, template, &angles)?;
    let mut current = init_cost;
    let mut reached = within(current).then_some(0);
    let mut sweeps = 0;
    while sweeps < max_sweeps {
        let before = current;
        for j in 0..angles.len() {
            let mut trial = angles.clone();
            let mut eval = |theta: f64| -> f64 {
                trial[j] = theta;
                dense_vqd_cost(h, refs, template, &trial).expect("shapes validated")
            };
            let (mut best_theta, mut best) = (angles[j], current);
            for m in 0..8 {
                let theta = m as f64 * FRAC_PI_4;
                let v = eval(theta);
                if v < best {
                    best = v;
                    best_theta = theta;
                }
            }
            let (g_theta, g_val) = golden_section(best_theta - FRAC_PI_4, best_theta + FRAC_PI_4, &mut eval);
            if g_val < best {
                best = g_val;
                best_theta = g_theta.rem_euclid(2.0 * PI);
            }
            if best < current {
                angles[j] = best_theta;
                current = best;
            }
        }
        sweeps += 1;
        if reached.is_none() && within(current) {
            reached = Some(sweeps);
        }
        if before - current < tolerance {
            break;
        }
    }
    Ok(RefineReport {
        level,
        init_kind,
        seed,
        init_cost,
        final_cost: current,
        iterations_to_tolerance: reached,
        tolerance,
        sweeps,
        final_angles: angles,
    })
}

/// Warm and cold refinement runs for one ladder level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelRefinement {
    pub level: usize,
    /// Discrete-search cost at the Clifford optimum.
    pub clifford_cost: f64,
    pub warm: RefineReport,
    pub cold: Vec<RefineReport>,
}

/// Solves the Clifford ladder, then refines every level from its Clifford
/// optimum and from `cold_seeds` random starts. Cold start `i` draws its
/// angles uniformly in `[0, 2π)` from a ChaCha8 stream seeded `seed + i`.
pub fn warmstart_report(
    h: &PauliSumHamiltonian,
    k: usize,
    template: &AnsatzTemplate,
    config: &SearchConfig,
    cold_seeds: usize,
    tolerance: f64,
    max_sweeps: usize,
) -> Result<Vec<LevelRefinement>> {
    let ladder = solve_ladder(h, k, template, config, None)?;
    let mut refs: Vec<DenseReference> = Vec::new();
    let mut out = Vec::with_capacity(k);
    for (level, found) in ladder.levels.iter().enumerate() {
        let warm = continuous_vqd_level(
            h,
            &refs,
            template,
            &found.params.angles(),
            tolerance,
            max_sweeps,
            InitKind::CliffordWarm,
            None,
        )?;
        let cold = (0..cold_seeds as u64)
            .map(|i| {
                let seed = config.seed.wrapping_add(i);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let angles: Vec<f64> = (0..template.parameter_count())
                    .map(|_| rng.gen_range(0.0..2.0 * PI))
                    .collect();
                continuous_vqd_level(
                    h,
                    &refs,
                    template,
                    &angles,
                    tolerance,
                    max_sweeps,
                    InitKind::RandomCold,
                    Some(seed),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(LevelRefinement {
            level,
            clifford_cost: found.cost,
            warm,
            cold,
        });
        refs.push(DenseReference {
            state: dense_state(template, &found.params.angles())?,
            beta: config.beta_policy.beta_for(h, level)?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ansatz::{prepare_state, CliffordParams};
    use crate::cost::{clifford_vqd_cost, DeflationContext};

    fn h(terms: &[(f64, &str)]) -> PauliSumHamiltonian {
        PauliSumHamiltonian::from_labels(terms.iter().copied()).unwrap()
    }

    #[test]
    fn already_optimal_start() {
        let t = AnsatzTemplate::new(2, 2).unwrap();
        let hz = h(&[(1.0, "ZI"), (2.0, "IZ")]);
        // Ry(π) on both qubits in the first column gives |11⟩.
        let ks: CliffordParams = "220000000000".parse().unwrap();
        let r = continuous_vqd_level(&hz, &[], &t, &ks.angles(), 1e-6, 50, InitKind::CliffordWarm, None)
            .unwrap();
        assert_eq!(r.iterations_to_tolerance, Some(0));
        assert!((r.final_cost + 3.0).abs() < 1e-12);
        assert!(r.final_cost <= r.init_cost + 1e-12);
    }

    #[test]
    fn cold_start_finds_single_qubit_minimum() {
        let t = AnsatzTemplate::new(1, 0).unwrap();
        let hx = h(&[(1.0, "X")]);
        let r = continuous_vqd_level(&hx, &[], &t, &[0.0, 0.0], 1e-9, 100, InitKind::RandomCold, Some(0))
            .unwrap();
        assert!((r.final_cost + 1.0).abs() < 1e-6, "{}", r.final_cost);
    }

    #[test]
    fn argument_validation() {
        let t = AnsatzTemplate::new(1, 0).unwrap();
        let hx = h(&[(1.0, "X")]);
        assert!(continuous_vqd_level(&hx, &[], &t, &[0.0], 1e-3, 5, InitKind::RandomCold, None).is_err());
        assert!(continuous_vqd_level(&hx, &[], &t, &[0.0, 0.0], 0.0, 5, InitKind::RandomCold, None).is_err());
    }

    #[test]
    fn dense_cost_matches_clifford_cost_on_grid() {
        let t = AnsatzTemplate::new(2, 1).unwrap();
        let ham = h(&[(0.3, "XY"), (-1.1, "ZZ"), (0.7, "YI"), (0.2, "II")]);
        let a: CliffordParams = "13022031".parse().unwrap();
        let b: CliffordParams = "21103302".parse().unwrap();
        let mut ctx = DeflationContext::new();
        ctx.push(prepare_state(&t, &a).unwrap(), 2.5).unwrap();
        let refs = [DenseReference {
            state: dense_state(&t, &a.angles()).unwrap(),
            beta: 2.5,
        }];
        let dense = dense_vqd_cost(&ham, &refs, &t, &b.angles()).unwrap();
        let clifford = clifford_vqd_cost(&prepare_state(&t, &b).unwrap(), &ham, &ctx).unwrap();
        assert!((dense - clifford).abs() < 1e-10);
    }

    #[test]
    fn warm_report_on_diagonal_hamiltonian() {
        let t = AnsatzTemplate::new(2, 1).unwrap();
        let hz = h(&[(1.0, "ZI"), (2.0, "IZ")]);
        let report = warmstart_report(&hz, 1, &t, &SearchConfig::default(), 3, 1e-6, 20).unwrap();
        assert_eq!(report.len(), 1);
        let warm = &report[0].warm;
        assert!((warm.init_cost + 3.0).abs() < 1e-12);
        assert!((warm.final_cost + 3.0).abs() < 1e-12);
        assert!((warm.init_cost - report[0].clifford_cost).abs() < 1e-10);
        for cold in &report[0].cold {
            assert!(cold.init_cost >= -3.0 - 1e-9);
            assert!(cold.final_cost <= cold.init_cost + 1e-12);
        }
    }
}
