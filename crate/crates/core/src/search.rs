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

//! Discrete search over the Clifford parameter grid, the deflation ladder and
//! bond-length sweeps with parameter transfer.
//!
//! Every search reports the minimum cost and, among exact ties, the
//! lexicographically smallest parameter vector. Work is split across the
//! current rayon pool with an associative min-reduction, so results are the
//! same for any thread count.

use std::cmp::Ordering;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ansatz::{prepare_state, AnsatzTemplate, CliffordParams};
use crate::cost::{default_beta, CostModel, DeflationContext, LevelResult};
use crate::error::{Error, Result};
use crate::pauli::PauliSumHamiltonian;
use crate::tableau::StabilizerTableau;

pub const DEFAULT_EXHAUSTIVE_CAP: usize = 12;
pub const DEFAULT_RESTARTS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Exhaustive,
    CoordinateDescent,
}

/// Penalty weights for the deflation context.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BetaPolicy {
    /// `default_beta(H)` for every earlier level.
    Auto,
    /// `β_i` for context entry `i`; a single value applies to every entry.
    Explicit(Vec<f64>),
}

impl BetaPolicy {
    pub fn beta_for(&self, h: &PauliSumHamiltonian, entry: usize) -> Result<f64> {
        match self {
            BetaPolicy::Auto => default_beta(h),
            BetaPolicy::Explicit(v) if v.len() == 1 => Ok(v[0]),
            BetaPolicy::Explicit(v) => v.get(entry).copied().ok_or_else(|| {
                Error::Config(format!(
                    "beta list has {} values, level {} needs an entry for state {entry}",
                    v.len(),
                    entry + 1
                ))
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub strategy: Strategy,
    pub exhaustive_cap: usize,
    pub restarts: usize,
    pub seed: u64,
    pub beta_policy: BetaPolicy,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            strategy: Strategy::Exhaustive,
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
            restarts: DEFAULT_RESTARTS,
            seed: 0,
            beta_policy: BetaPolicy::Auto,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self, template: &AnsatzTemplate) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::Config("restarts must be at least 1".into()));
        }
        if self.strategy == Strategy::Exhaustive && template.parameter_count() > self.exhaustive_cap {
            return Err(Error::ExhaustiveCap {
                count: template.parameter_count(),
                cap: self.exhaustive_cap,
            });
        }
        if let BetaPolicy::Explicit(v) = &self.beta_policy {
            if v.is_empty() || v.iter().any(|b| !(b.is_finite() && *b > 0.0)) {
                return Err(Error::Config(format!("beta values must be positive, got {v:?}")));
            }
        }
        Ok(())
    }
}

/// A scored parameter vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub params: CliffordParams,
    pub value: f64,
}

impl Candidate {
    /// Total order used by every search: value, then lexicographic params.
    pub fn cmp_rank(&self, other: &Self) -> Ordering {
        self.value
            .total_cmp(&other.value)
            .then_with(|| self.params.cmp(&other.params))
    }

    fn min(a: Self, b: Self) -> Self {
        if b.cmp_rank(&a) == Ordering::Less {
            b
        } else {
            a
        }
    }
}

fn reduce_min(a: Option<Candidate>, b: Option<Candidate>) -> Option<Candidate> {
    match (a, b) {
        (Some(a), Some(b)) => Some(Candidate::min(a, b)),
        (a, None) => a,
        (None, b) => b,
    }
}

fn check_cap(template: &AnsatzTemplate, cap: usize) -> Result<()> {
    if template.parameter_count() > cap {
        return Err(Error::ExhaustiveCap {
            count: template.parameter_count(),
            cap,
        });
    }
    Ok(())
}

/// Number of leading parameters fixed per parallel task.
fn split_depth(p: usize) -> usize {
    p.min(3)
}

fn prefix_digits(index: usize, depth: usize) -> Vec<u8> {
    (0..depth)
        .map(|j| ((index >> (2 * (depth - 1 - j))) & 3) as u8)
        .collect()
}

/// Minimizes an arbitrary cost over all `4^P` parameter vectors.
pub fn exhaustive_search<F>(template: &AnsatzTemplate, cap: usize, cost: F) -> Result<Candidate>
where
    F: Fn(&CliffordParams) -> f64 + Sync,
{
    check_cap(template, cap)?;
    let p = template.parameter_count();
    let depth = split_depth(p);
    let best = (0..1usize << (2 * depth))
        .into_par_iter()
        .map(|prefix| {
            let mut ks = prefix_digits(prefix, depth);
            ks.resize(p, 0);
            let mut best: Option<Candidate> = None;
            loop {
                let params = CliffordParams::from_vec_unchecked(ks.clone());
                let value = cost(&params);
                if best.as_ref().is_none_or(|b| value < b.value) {
                    best = Some(Candidate { params, value });
                }
                // odometer over the free suffix, last digit fastest
                let mut j = p;
                loop {
                    if j == depth {
                        return best;
                    }
                    j -= 1;
                    if ks[j] < 3 {
                        ks[j] += 1;
                        break;
                    }
                    ks[j] = 0;
                }
            }
        })
        .reduce(|| None, reduce_min);
    Ok(best.expect("grid is never empty"))
}

/// Exhaustive minimization of a deflation cost, sharing tableau prefixes.
///
/// The grid is walked depth-first in lexicographic order; the tableau after
/// the first `d` parameters is kept on a stack so each leaf costs one
/// rotation plus a cost evaluation.
pub fn exhaustive_search_states(
    template: &AnsatzTemplate,
    cap: usize,
    model: &CostModel,
) -> Result<Candidate> {
    check_cap(template, cap)?;
    if model.n_qubits() != template.n_qubits() {
        return Err(Error::SizeMismatch {
            expected: template.n_qubits(),
            found: model.n_qubits(),
        });
    }
    let p = template.parameter_count();
    let depth = split_depth(p);
    let best = (0..1usize << (2 * depth))
        .into_par_iter()
        .map(|prefix| {
            let ks = prefix_digits(prefix, depth);
            let mut root = StabilizerTableau::new(template.n_qubits()).expect("validated size");
            for (step, &k) in template.steps().iter().zip(&ks) {
                apply_step(&mut root, step, k);
            }
            let mut walker = Walker {
                template,
                model,
                stack: vec![root; p - depth + 1],
                digits: ks,
                best: None,
            };
            walker.descend(depth, 0);
            walker.best
        })
        .reduce(|| None, reduce_min);
    Ok(best.expect("grid is never empty"))
}

#[inline]
fn apply_step(t: &mut StabilizerTableau, step: &crate::ansatz::ParamStep, k: u8) {
    for &g in &step.compiled[k as usize] {
        t.apply_unchecked(g);
    }
    for &g in &step.trailing {
        t.apply_unchecked(g);
    }
}

struct Walker<'a> {
    template: &'a AnsatzTemplate,
    model: &'a CostModel,
    stack: Vec<StabilizerTableau>,
    digits: Vec<u8>,
    best: Option<Candidate>,
}

impl Walker<'_> {
    /// `param` is the next parameter to set, `level` its slot on the stack.
    fn descend(&mut self, param: usize, level: usize) {
        let steps = self.template.steps();
        if param == steps.len() {
            let value = self.model.evaluate_unchecked(&self.stack[level]).cost;
            if self.best.as_ref().is_none_or(|b| value < b.value) {
                self.best = Some(Candidate {
                    params: CliffordParams::from_vec_unchecked(self.digits.clone()),
                    value,
                });
            }
            return;
        }
        for k in 0..4u8 {
            let (lo, hi) = self.stack.split_at_mut(level + 1);
            let child = &mut hi[0];
            child.clone_from(&lo[level]);
            apply_step(child, &steps[param], k);
            self.digits.push(k);
            self.descend(param + 1, level + 1);
            self.digits.pop();
        }
    }
}

/// Multi-restart coordinate descent.
///
/// Each start is improved by sweeping the coordinates in order and setting
/// each to its best value in `{0,1,2,3}` with the others held fixed (ties go
/// to the smaller digit) until a sweep changes nothing. Starts are
/// `extra_starts` followed by `restarts` uniform draws from a ChaCha8 stream
/// seeded with `seed`.
pub fn coordinate_descent_search<F>(
    template: &AnsatzTemplate,
    seed: u64,
    restarts: usize,
    extra_starts: &[CliffordParams],
    cost: F,
) -> Result<Candidate>
where
    F: Fn(&CliffordParams) -> f64 + Sync,
{
    if restarts == 0 {
        return Err(Error::Config("restarts must be at least 1".into()));
    }
    let p = template.parameter_count();
    for s in extra_starts {
        template.check_len(s.len())?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let starts: Vec<Vec<u8>> = extra_starts
        .iter()
        .map(|s| s.ks().to_vec())
        .chain((0..restarts).map(|_| (0..p).map(|_| rng.gen_range(0..4u8)).collect()))
        .collect();
    let best = starts
        .into_par_iter()
        .map(|start| Some(descend_from(start, &cost)))
        .reduce(|| None, reduce_min);
    Ok(best.expect("at least one start"))
}

fn descend_from<F: Fn(&CliffordParams) -> f64>(start: Vec<u8>, cost: &F) -> Candidate {
    let mut params = CliffordParams::from_vec_unchecked(start);
    let mut current = cost(&params);
    // Each accepted move lowers (cost, params) in the search order, so this
    // terminates.
    loop {
        let mut changed = false;
        for j in 0..params.len() {
            let mut best_k = params.ks()[j];
            let mut best_v = current;
            for k in 0..4u8 {
                if k == params.ks()[j] {
                    continue;
                }
                let mut ks = params.ks().to_vec();
                ks[j] = k;
                let trial = CliffordParams::from_vec_unchecked(ks);
                let v = cost(&trial);
                if v < best_v || (v == best_v && k < best_k) {
                    best_k = k;
                    best_v = v;
                }
            }
            if best_k != params.ks()[j] {
                let mut ks = params.ks().to_vec();
                ks[j] = best_k;
                params = CliffordParams::from_vec_unchecked(ks);
                current = best_v;
                changed = true;
            }
        }
        if !changed {
            return Candidate {
                params,
                value: current,
            };
        }
    }
}

/// Runs the configured search on one deflation level and packages the result.
///
/// `spectrum`, when given, is the ascending exact spectrum used to fill the
/// reference columns. `warm_starts` only affect coordinate descent.
pub fn solve_level(
    h: &PauliSumHamiltonian,
    ctx: &DeflationContext,
    template: &AnsatzTemplate,
    config: &SearchConfig,
    spectrum: Option<&[f64]>,
    warm_starts: &[CliffordParams],
) -> Result<LevelResult> {
    config.validate(template)?;
    if h.n_qubits() != template.n_qubits() {
        return Err(Error::SizeMismatch {
            expected: template.n_qubits(),
            found: h.n_qubits(),
        });
    }
    let model = CostModel::new(h, ctx)?;
    let best = match config.strategy {
        Strategy::Exhaustive => exhaustive_search_states(template, config.exhaustive_cap, &model)?,
        Strategy::CoordinateDescent => {
            coordinate_descent_search(template, config.seed, config.restarts, warm_starts, |params| {
                let state = prepare_state(template, params).expect("length checked");
                model.evaluate_unchecked(&state).cost
            })?
        }
    };
    let state = prepare_state(template, &best.params)?;
    let split = model.evaluate_unchecked(&state);
    debug_assert_eq!(split.cost, best.value);
    let level = ctx.level();
    let exact_energy = spectrum.and_then(|s| s.get(level).copied());
    Ok(LevelResult {
        level,
        params: best.params,
        energy: split.energy,
        penalty: split.penalty,
        cost: split.cost,
        state,
        exact_energy,
        abs_error: exact_energy.map(|e| (split.energy - e).abs()),
    })
}

/// All levels found for one Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderResult {
    pub hamiltonian_id: String,
    pub levels: Vec<LevelResult>,
    pub config_echo: SearchConfig,
}

fn check_level_count(h: &PauliSumHamiltonian, k: usize) -> Result<()> {
    let limit = 4u128.checked_pow(h.n_qubits() as u32).unwrap_or(u128::MAX);
    if k == 0 || k as u128 > limit {
        return Err(Error::Config(format!(
            "levels must be in 1..=4^{}, got {k}",
            h.n_qubits()
        )));
    }
    Ok(())
}

/// Deflation ladder: levels `0..k`, each penalised against all earlier ones.
pub fn solve_ladder(
    h: &PauliSumHamiltonian,
    k: usize,
    template: &AnsatzTemplate,
    config: &SearchConfig,
    spectrum: Option<&[f64]>,
) -> Result<LadderResult> {
    solve_ladder_with_starts(h, "", k, template, config, spectrum, None)
}

fn solve_ladder_with_starts(
    h: &PauliSumHamiltonian,
    id: &str,
    k: usize,
    template: &AnsatzTemplate,
    config: &SearchConfig,
    spectrum: Option<&[f64]>,
    previous: Option<&LadderResult>,
) -> Result<LadderResult> {
    check_level_count(h, k)?;
    let mut ctx = DeflationContext::new();
    let mut levels = Vec::with_capacity(k);
    for level in 0..k {
        let warm: Vec<CliffordParams> = previous
            .and_then(|prev| prev.levels.get(level))
            .map(|l| vec![l.params.clone()])
            .unwrap_or_default();
        let result = solve_level(h, &ctx, template, config, spectrum, &warm)?;
        if level + 1 < k {
            ctx.push(result.state.clone(), config.beta_policy.beta_for(h, level)?)?;
        }
        levels.push(result);
    }
    Ok(LadderResult {
        hamiltonian_id: id.to_string(),
        levels,
        config_echo: config.clone(),
    })
}

/// One bond-length (or other) grid point of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub label: String,
    pub hamiltonian_source: PathBuf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepManifest {
    pub points: Vec<SweepPoint>,
    pub levels_requested: usize,
    pub transfer_enabled: bool,
}

/// Solves every manifest point in order.
///
/// With transfer enabled and coordinate descent, level `j` at point `i+1`
/// also starts from the optimum of level `j` at point `i`. Exhaustive search
/// is global, so transfer cannot change its results.
pub fn sweep(
    manifest: &SweepManifest,
    template: &AnsatzTemplate,
    config: &SearchConfig,
    with_oracle: bool,
) -> Result<Vec<LadderResult>> {
    let hamiltonians = manifest
        .points
        .iter()
        .map(|pt| crate::io::load_hamiltonian(&pt.hamiltonian_source))
        .collect::<Result<Vec<_>>>()?;
    let points: Vec<(String, PauliSumHamiltonian)> = manifest
        .points
        .iter()
        .map(|p| p.label.clone())
        .zip(hamiltonians)
        .collect();
    sweep_hamiltonians(&points, manifest.levels_requested, manifest.transfer_enabled, template, config, with_oracle)
}

/// [`sweep`] over already loaded Hamiltonians.
pub fn sweep_hamiltonians(
    points: &[(String, PauliSumHamiltonian)],
    k: usize,
    transfer: bool,
    template: &AnsatzTemplate,
    config: &SearchConfig,
    with_oracle: bool,
) -> Result<Vec<LadderResult>> {
    if points.is_empty() {
        return Err(Error::Manifest("sweep has no points".into()));
    }
    for (label, h) in points {
        if h.n_qubits() != template.n_qubits() {
            return Err(Error::Manifest(format!(
                "point {label:?} has {} qubits, template has {}",
                h.n_qubits(),
                template.n_qubits()
            )));
        }
    }
    let mut out: Vec<LadderResult> = Vec::with_capacity(points.len());
    for (label, h) in points {
        let spectrum = if with_oracle {
            Some(crate::oracle::hamiltonian_spectrum(h)?)
        } else {
            None
        };
        let previous = if transfer && config.strategy == Strategy::CoordinateDescent {
            out.last()
        } else {
            None
        };
        let ladder =
            solve_ladder_with_starts(h, label, k, template, config, spectrum.as_deref(), previous)?;
        out.push(ladder);
    }
    Ok(out)
}
