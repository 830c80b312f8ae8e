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

//! Hardware-efficient ansatz template and its Clifford parameter grid.
//!
//! The layout is `L` blocks of (Ry column, Rz column, linear CNOT chain)
//! followed by one final Ry and Rz column. Parameters are numbered column by
//! column, ascending qubit within a column, Ry column before Rz column. For
//! two qubits and two blocks that is twelve parameters.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::oracle::{apply_cnot, apply_single_qubit, check_dense, DenseMatrix};
use crate::pauli::MAX_QUBITS;
use crate::tableau::{Gate, StabilizerTableau};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RotationAxis {
    X,
    Y,
    Z,
}

impl RotationAxis {
    /// `exp(-i θ A / 2)` as a 2×2 matrix.
    pub fn matrix(self, theta: f64) -> [[Complex64; 2]; 2] {
        let (s, c) = (theta / 2.0).sin_cos();
        let re = |v: f64| Complex64::new(v, 0.0);
        let im = |v: f64| Complex64::new(0.0, v);
        match self {
            RotationAxis::X => [[re(c), im(-s)], [im(-s), re(c)]],
            RotationAxis::Y => [[re(c), re(-s)], [re(s), re(c)]],
            RotationAxis::Z => [[Complex64::new(c, -s), re(0.0)], [re(0.0), Complex64::new(c, s)]],
        }
    }
}

/// Clifford gates (on `qubit`) equal to `R_axis(k·π/2)` up to global phase.
pub fn rotation_to_cliffords(axis: RotationAxis, k: u8, qubit: usize) -> Result<Vec<Gate>> {
    let rz: &[Gate] = match k {
        0 => &[],
        1 => &[Gate::S(qubit)],
        2 => &[Gate::Z(qubit)],
        3 => &[Gate::SDag(qubit)],
        _ => return Err(Error::RotationMultiple(k as i64)),
    };
    let mut out = Vec::with_capacity(rz.len() + 4);
    match axis {
        RotationAxis::Z => out.extend_from_slice(rz),
        RotationAxis::X if k == 0 => {}
        RotationAxis::X => {
            out.push(Gate::H(qubit));
            out.extend_from_slice(rz);
            out.push(Gate::H(qubit));
        }
        RotationAxis::Y if k == 0 => {}
        RotationAxis::Y => {
            out.extend_from_slice(&[Gate::SDag(qubit), Gate::H(qubit)]);
            out.extend_from_slice(rz);
            out.extend_from_slice(&[Gate::H(qubit), Gate::S(qubit)]);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Rotation {
        axis: RotationAxis,
        qubit: usize,
        param: usize,
    },
    Cnot {
        control: usize,
        target: usize,
    },
}

/// One parameter's worth of circuit: its rotation plus any entanglers that
/// follow it before the next rotation.
#[derive(Debug, Clone)]
pub(crate) struct ParamStep {
    /// Compiled rotation for k = 0..4.
    pub(crate) compiled: [Vec<Gate>; 4],
    pub(crate) trailing: Vec<Gate>,
}

#[derive(Debug, Clone)]
pub struct AnsatzTemplate {
    n_qubits: usize,
    entangling_blocks: usize,
    slots: Vec<Slot>,
    steps: Vec<ParamStep>,
}

impl PartialEq for AnsatzTemplate {
    fn eq(&self, other: &Self) -> bool {
        (self.n_qubits, self.entangling_blocks) == (other.n_qubits, other.entangling_blocks)
    }
}

impl AnsatzTemplate {
    pub fn new(n_qubits: usize, entangling_blocks: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::QubitCount {
                got: n_qubits,
                max: MAX_QUBITS,
            });
        }
        let mut slots = Vec::new();
        let mut param = 0;
        let mut rotation_columns = |slots: &mut Vec<Slot>| {
            for axis in [RotationAxis::Y, RotationAxis::Z] {
                for qubit in 0..n_qubits {
                    slots.push(Slot::Rotation { axis, qubit, param });
                    param += 1;
                }
            }
        };
        for _ in 0..entangling_blocks {
            rotation_columns(&mut slots);
            for i in 0..n_qubits.saturating_sub(1) {
                slots.push(Slot::Cnot {
                    control: i,
                    target: i + 1,
                });
            }
        }
        rotation_columns(&mut slots);

        let mut steps: Vec<ParamStep> = Vec::new();
        for slot in &slots {
            match *slot {
                Slot::Rotation { axis, qubit, .. } => steps.push(ParamStep {
                    compiled: [0, 1, 2, 3].map(|k| {
                        rotation_to_cliffords(axis, k, qubit).expect("k in range")
                    }),
                    trailing: Vec::new(),
                }),
                Slot::Cnot { control, target } => steps
                    .last_mut()
                    .expect("entanglers follow a rotation column")
                    .trailing
                    .push(Gate::Cnot(control, target)),
            }
        }
        Ok(Self {
            n_qubits,
            entangling_blocks,
            slots,
            steps,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn entangling_blocks(&self) -> usize {
        self.entangling_blocks
    }

    pub fn parameter_count(&self) -> usize {
        2 * self.n_qubits * (self.entangling_blocks + 1)
    }

    /// Gate schedule in application order.
    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub(crate) fn steps(&self) -> &[ParamStep] {
        &self.steps
    }

    pub(crate) fn check_len(&self, found: usize) -> Result<()> {
        if found != self.parameter_count() {
            return Err(Error::ParamLength {
                expected: self.parameter_count(),
                found,
            });
        }
        Ok(())
    }
}

/// Discrete parameters `k_j ∈ {0,1,2,3}`; angle `j` is `k_j·π/2`.
///
/// Ordering is lexicographic on the digit vector, which is also the
/// tie-breaking order of every search.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CliffordParams(Vec<u8>);

impl CliffordParams {
    pub fn new(ks: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = ks.iter().find(|&&k| k > 3) {
            return Err(Error::RotationMultiple(bad as i64));
        }
        Ok(Self(ks))
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub(crate) fn from_vec_unchecked(ks: Vec<u8>) -> Self {
        debug_assert!(ks.iter().all(|&k| k < 4));
        Self(ks)
    }

    pub fn ks(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn angles(&self) -> Vec<f64> {
        self.0.iter().map(|&k| k as f64 * FRAC_PI_2).collect()
    }
}

/// Renders as a base-4 digit string such as `020013100230`.
impl fmt::Display for CliffordParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in &self.0 {
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

impl FromStr for CliffordParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0'..='3' => Ok(c as u8 - b'0'),
                other => Err(Error::Config(format!("invalid parameter digit {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

/// Runs the compiled Clifford circuit for `params` on `|0…0⟩`.
pub fn prepare_state(template: &AnsatzTemplate, params: &CliffordParams) -> Result<StabilizerTableau> {
    template.check_len(params.len())?;
    let mut t = StabilizerTableau::new(template.n_qubits())?;
    for (step, &k) in template.steps().iter().zip(params.ks()) {
        for &g in &step.compiled[k as usize] {
            t.apply_unchecked(g);
        }
        for &g in &step.trailing {
            t.apply_unchecked(g);
        }
    }
    Ok(t)
}

fn check_angles(template: &AnsatzTemplate, angles: &[f64]) -> Result<()> {
    template.check_len(angles.len())?;
    check_dense(template.n_qubits())
}

/// Dense `U(θ)` as the ordered product of every rotation and CNOT matrix.
pub fn dense_unitary(template: &AnsatzTemplate, angles: &[f64]) -> Result<DenseMatrix> {
    check_angles(template, angles)?;
    let n = template.n_qubits();
    let dim = 1usize << n;
    // Evolve each basis column; column j of U is U|j⟩.
    let mut u = DenseMatrix::zeros(dim);
    for j in 0..dim {
        let col = run_dense(template, angles, crate::oracle::basis_state(n, j));
        for (i, a) in col.into_iter().enumerate() {
            u.set(i, j, a);
        }
    }
    Ok(u)
}

pub(crate) fn run_dense(template: &AnsatzTemplate, angles: &[f64], mut v: Vec<Complex64>) -> Vec<Complex64> {
    let n = template.n_qubits();
    for slot in template.slots() {
        match *slot {
            Slot::Rotation { axis, qubit, param } => {
                apply_single_qubit(&mut v, n, qubit, axis.matrix(angles[param]))
            }
            Slot::Cnot { control, target } => apply_cnot(&mut v, n, control, target),
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{basis_state, dense_pauli, dense_state};
    use crate::pauli::parse_pauli;

    fn gate_matrix(g: Gate) -> DenseMatrix {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let rows = match g {
            Gate::H(_) => vec![vec![c(r, 0.0), c(r, 0.0)], vec![c(r, 0.0), c(-r, 0.0)]],
            Gate::S(_) => vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 1.0)]],
            Gate::SDag(_) => vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, -1.0)]],
            Gate::X(_) => return dense_pauli(&parse_pauli("X").unwrap()).unwrap(),
            Gate::Z(_) => return dense_pauli(&parse_pauli("Z").unwrap()).unwrap(),
            Gate::Cnot(..) => unreachable!(),
        };
        DenseMatrix::from_rows(rows)
    }

    fn compiled_unitary(gates: &[Gate]) -> DenseMatrix {
        gates
            .iter()
            .fold(DenseMatrix::identity(2), |acc, &g| gate_matrix(g).matmul(&acc))
    }

    #[test]
    fn rotation_table_examples() {
        assert_eq!(rotation_to_cliffords(RotationAxis::Z, 1, 0).unwrap(), [Gate::S(0)]);
        assert_eq!(rotation_to_cliffords(RotationAxis::Z, 0, 0).unwrap(), []);
        assert_eq!(
            rotation_to_cliffords(RotationAxis::Y, 2, 1).unwrap(),
            [Gate::SDag(1), Gate::H(1), Gate::Z(1), Gate::H(1), Gate::S(1)]
        );
        assert!(matches!(
            rotation_to_cliffords(RotationAxis::X, 4, 0),
            Err(Error::RotationMultiple(4))
        ));
    }

    #[test]
    fn compiled_rotations_equal_up_to_phase() {
        for axis in [RotationAxis::X, RotationAxis::Y, RotationAxis::Z] {
            for k in 0..4u8 {
                let uc = compiled_unitary(&rotation_to_cliffords(axis, k, 0).unwrap());
                let m = axis.matrix(k as f64 * FRAC_PI_2);
                let r = DenseMatrix::from_rows(m.iter().map(|row| row.to_vec()).collect());
                let tr = uc.adjoint().matmul(&r).trace().norm();
                assert!((tr - 2.0).abs() < 1e-12, "{axis:?} k={k}: {tr}");
            }
        }
    }

    #[test]
    fn compiled_rotations_on_zero() {
        let y2 = StabilizerTableau::new(1).map(|mut t| {
            t.apply_all(&rotation_to_cliffords(RotationAxis::Y, 2, 0).unwrap()).unwrap();
            t
        });
        assert_eq!(y2.unwrap().stabilizers()[0].to_string(), "-Z");
        let mut t = StabilizerTableau::new(1).unwrap();
        t.apply_all(&rotation_to_cliffords(RotationAxis::Y, 1, 0).unwrap()).unwrap();
        assert_eq!(t.stabilizers()[0].to_string(), "X");
    }

    #[test]
    fn two_qubit_two_block_layout() {
        let t = AnsatzTemplate::new(2, 2).unwrap();
        assert_eq!(t.parameter_count(), 12);
        use RotationAxis::{Y, Z};
        let rot = |axis, qubit, param| Slot::Rotation { axis, qubit, param };
        let cx = Slot::Cnot {
            control: 0,
            target: 1,
        };
        let expected = vec![
            rot(Y, 0, 0),
            rot(Y, 1, 1),
            rot(Z, 0, 2),
            rot(Z, 1, 3),
            cx,
            rot(Y, 0, 4),
            rot(Y, 1, 5),
            rot(Z, 0, 6),
            rot(Z, 1, 7),
            cx,
            rot(Y, 0, 8),
            rot(Y, 1, 9),
            rot(Z, 0, 10),
            rot(Z, 1, 11),
        ];
        assert_eq!(t.slots(), expected.as_slice());
    }

    #[test]
    fn parameter_count_formula() {
        for n in 1..6 {
            for l in 0..4 {
                let t = AnsatzTemplate::new(n, l).unwrap();
                assert_eq!(t.parameter_count(), 2 * n * (l + 1));
                let rotations = t
                    .slots()
                    .iter()
                    .filter(|s| matches!(s, Slot::Rotation { .. }))
                    .count();
                assert_eq!(rotations, t.parameter_count());
                assert_eq!(t.slots().len() - rotations, l * (n - 1));
            }
        }
        assert!(AnsatzTemplate::new(0, 1).is_err());
    }

    #[test]
    fn params_validation_and_format() {
        assert!(CliffordParams::new(vec![0, 4]).is_err());
        let p: CliffordParams = "020013100230".parse().unwrap();
        assert_eq!(p.to_string(), "020013100230");
        assert!("0125".parse::<CliffordParams>().is_err());
        assert!(CliffordParams::new(vec![0, 1]).unwrap() < CliffordParams::new(vec![1, 0]).unwrap());
    }

    #[test]
    fn prepare_state_examples() {
        let t10 = AnsatzTemplate::new(1, 0).unwrap();
        let s = prepare_state(&t10, &CliffordParams::new(vec![0, 0]).unwrap()).unwrap();
        assert_eq!(s, StabilizerTableau::new(1).unwrap());
        let s = prepare_state(&t10, &CliffordParams::new(vec![2, 0]).unwrap()).unwrap();
        assert_eq!(s.stabilizers()[0].to_string(), "-Z");
        let t22 = AnsatzTemplate::new(2, 2).unwrap();
        let s = prepare_state(&t22, &CliffordParams::zeros(12)).unwrap();
        assert_eq!(s, StabilizerTableau::new(2).unwrap());
        assert!(matches!(
            prepare_state(&t22, &CliffordParams::zeros(11)),
            Err(Error::ParamLength { expected: 12, found: 11 })
        ));
    }

    #[test]
    fn dense_unitary_examples() {
        let t10 = AnsatzTemplate::new(1, 0).unwrap();
        assert_eq!(dense_unitary(&t10, &[0.0, 0.0]).unwrap(), DenseMatrix::identity(2));
        let v = dense_unitary(&t10, &[FRAC_PI_2, 0.0])
            .unwrap()
            .apply(&basis_state(1, 0));
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((v[0].re - r).abs() < 1e-15 && (v[1].re - r).abs() < 1e-15);
        assert!(dense_unitary(&t10, &[0.0]).is_err());
        assert!(dense_unitary(&AnsatzTemplate::new(13, 0).unwrap(), &[0.0; 26]).is_err());
    }

    #[test]
    fn dense_unitary_is_unitary_and_matches_dense_state() {
        let t = AnsatzTemplate::new(3, 1).unwrap();
        let angles: Vec<f64> = (0..t.parameter_count()).map(|j| 0.37 * j as f64 - 1.0).collect();
        let u = dense_unitary(&t, &angles).unwrap();
        let uu = u.adjoint().matmul(&u);
        for i in 0..8 {
            for j in 0..8 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((uu.get(i, j) - Complex64::new(expect, 0.0)).norm() < 1e-12);
            }
        }
        let col = u.apply(&basis_state(3, 0));
        let v = dense_state(&t, &angles).unwrap();
        for (a, b) in col.iter().zip(&v) {
            assert!((a - b).norm() < 1e-13);
        }
    }
}
