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

//! Energies and deflation costs over stabilizer states.
//!
//! `cost(φ) = ⟨φ|H|φ⟩ + Σ_i β_i |⟨φ_i|φ⟩|²`, where the `φ_i` are the states
//! already found for lower levels. All sums use a fixed pairwise reduction
//! order so results do not depend on how the caller parallelises.

use crate::ansatz::CliffordParams;
use crate::error::{Error, Result};
use crate::pauli::{check_same, PauliString, PauliSumHamiltonian};
use crate::tableau::{overlap_sq_fast, overlap_sq_with_group, StabilizerTableau};

/// Above this size overlaps use the GF(2) intersection instead of
/// enumerating `2^n` group elements.
const PROJECTOR_SUM_MAX_QUBITS: usize = 8;

/// Pairwise (tree) summation in a fixed order.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        len => {
            let (lo, hi) = values.split_at(len / 2);
            pairwise_sum(lo) + pairwise_sum(hi)
        }
    }
}

/// Previously found states and their penalty weights, in discovery order.
#[derive(Debug, Clone, Default)]
pub struct DeflationContext {
    entries: Vec<(StabilizerTableau, f64)>,
}

impl DeflationContext {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, state: StabilizerTableau, beta: f64) -> Result<()> {
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::Config(format!("penalty weight must be positive, got {beta}")));
        }
        if let Some((first, _)) = self.entries.first() {
            check_same(first.n_qubits(), state.n_qubits())?;
        }
        self.entries.push((state, beta));
        Ok(())
    }

    pub fn entries(&self) -> &[(StabilizerTableau, f64)] {
        &self.entries
    }

    /// Index of the level this context is used to solve for.
    pub fn level(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Energy/penalty split of one cost evaluation, all in Hartree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostBreakdown {
    pub energy: f64,
    pub penalty: f64,
    pub cost: f64,
}

#[derive(Debug, Clone)]
enum Reference {
    Group(Vec<PauliString>),
    Tableau(StabilizerTableau),
}

/// Pairwise sum of `f(0), …, f(len-1)`, same tree as [`pairwise_sum`].
fn pairwise_sum_by(lo: usize, hi: usize, f: &impl Fn(usize) -> f64) -> f64 {
    match hi - lo {
        0 => 0.0,
        1 => f(lo),
        2 => f(lo) + f(lo + 1),
        len => {
            let mid = lo + len / 2;
            pairwise_sum_by(lo, mid, f) + pairwise_sum_by(mid, hi, f)
        }
    }
}

/// Precomputed evaluator for one `(H, context)` pair.
#[derive(Debug, Clone)]
pub struct CostModel {
    n_qubits: usize,
    terms: Vec<(f64, PauliString)>,
    refs: Vec<(Reference, f64)>,
}

impl CostModel {
    pub fn new(h: &PauliSumHamiltonian, ctx: &DeflationContext) -> Result<Self> {
        let n = h.n_qubits();
        let refs = ctx
            .entries()
            .iter()
            .map(|(state, beta)| {
                check_same(n, state.n_qubits())?;
                let r = if n <= PROJECTOR_SUM_MAX_QUBITS {
                    Reference::Group(state.group_elements())
                } else {
                    Reference::Tableau(state.clone())
                };
                Ok((r, *beta))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            n_qubits: n,
            terms: h.terms().to_vec(),
            refs,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn evaluate(&self, state: &StabilizerTableau) -> Result<CostBreakdown> {
        check_same(self.n_qubits, state.n_qubits())?;
        Ok(self.evaluate_unchecked(state))
    }

    pub(crate) fn evaluate_unchecked(&self, state: &StabilizerTableau) -> CostBreakdown {
        let energy = pairwise_sum_by(0, self.terms.len(), &|j| {
            let (c, p) = &self.terms[j];
            match state.expectation_unchecked(p) {
                1 => *c,
                -1 => -*c,
                _ => 0.0,
            }
        });
        let penalty = pairwise_sum_by(0, self.refs.len(), &|i| {
            let (r, beta) = &self.refs[i];
            let ov = match r {
                Reference::Group(g) => overlap_sq_with_group(state, g),
                Reference::Tableau(t) => overlap_sq_fast(t, state).expect("sizes checked"),
            };
            beta * ov
        });
        CostBreakdown {
            energy,
            penalty,
            cost: energy + penalty,
        }
    }
}

/// `⟨φ|H|φ⟩` in Hartree.
pub fn energy(state: &StabilizerTableau, h: &PauliSumHamiltonian) -> Result<f64> {
    Ok(CostModel::new(h, &DeflationContext::new())?
        .evaluate(state)?
        .energy)
}

/// Deflation cost `⟨φ|H|φ⟩ + Σ β_i |⟨φ_i|φ⟩|²`.
pub fn clifford_vqd_cost(
    state: &StabilizerTableau,
    h: &PauliSumHamiltonian,
    ctx: &DeflationContext,
) -> Result<f64> {
    Ok(CostModel::new(h, ctx)?.evaluate(state)?.cost)
}

/// Default penalty weight: twice the coefficient one-norm of `H`, which
/// bounds the spread of its spectrum.
pub fn default_beta(h: &PauliSumHamiltonian) -> Result<f64> {
    if h.terms().is_empty() {
        return Err(Error::EmptyHamiltonian);
    }
    let beta = 2.0 * h.coefficient_one_norm();
    if beta <= 0.0 {
        return Err(Error::Config("Hamiltonian has only zero coefficients".into()));
    }
    Ok(beta)
}

/// Outcome of the search for one level of the ladder.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelResult {
    pub level: usize,
    pub params: CliffordParams,
    pub energy: f64,
    pub penalty: f64,
    pub cost: f64,
    pub state: StabilizerTableau,
    pub exact_energy: Option<f64>,
    pub abs_error: Option<f64>,
}
