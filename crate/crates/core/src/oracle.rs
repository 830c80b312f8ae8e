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

//! Dense ground truth: Hamiltonian matrices, a Jacobi eigensolver and
//! state-vector arithmetic.
//!
//! Basis convention: qubit 0 is the most significant bit of a computational
//! basis index, so `|q0 q1 … q_{n-1}⟩` has index `Σ q_j 2^{n-1-j}`.

use num_complex::Complex64;

use crate::ansatz::{run_dense, AnsatzTemplate};
use crate::error::{Error, Result};
use crate::pauli::{PauliString, PauliSumHamiltonian};

/// Largest register the dense routines accept.
pub const DENSE_QUBIT_CAP: usize = 12;

const HERMITIAN_TOL: f64 = 1e-12;
const JACOBI_OFF_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

pub(crate) fn check_dense(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 || n_qubits > DENSE_QUBIT_CAP {
        return Err(Error::QubitCount {
            got: n_qubits,
            max: DENSE_QUBIT_CAP,
        });
    }
    Ok(())
}

/// Reverses the low `n` bits so that qubit `q` maps to index bit `n-1-q`.
fn to_index_bits(bits: u64, n: usize) -> usize {
    (bits.reverse_bits() >> (64 - n)) as usize
}

const I_POW: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, -1.0),
];

/// Action of a Pauli on basis states: `P|i⟩ = amp(i) |i ^ flip⟩`.
struct PauliAction {
    flip: usize,
    zmask: usize,
    base: u8,
}

impl PauliAction {
    fn new(p: &PauliString) -> Self {
        let n = p.n_qubits();
        let n_y = (p.x_bits() & p.z_bits()).count_ones() as u8;
        Self {
            flip: to_index_bits(p.x_bits(), n),
            zmask: to_index_bits(p.z_bits(), n),
            base: (p.phase_ipow() + n_y) & 3,
        }
    }

    #[inline]
    fn amp(&self, i: usize) -> Complex64 {
        let minus = (i & self.zmask).count_ones() as u8 & 1;
        I_POW[((self.base + 2 * minus) & 3) as usize]
    }
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        Self {
            dim,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.data[j * d + i] = self.data[i * d + j].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                self.data[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    fn max_hermitian_deviation(&self) -> f64 {
        let d = self.dim;
        let mut dev = 0.0f64;
        for i in 0..d {
            for j in i..d {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }
}

/// Dense matrix of a single (possibly phased) Pauli string.
pub fn dense_pauli(p: &PauliString) -> Result<DenseMatrix> {
    check_dense(p.n_qubits())?;
    let dim = 1usize << p.n_qubits();
    let act = PauliAction::new(p);
    let mut m = DenseMatrix::zeros(dim);
    for i in 0..dim {
        m.set(i ^ act.flip, i, act.amp(i));
    }
    Ok(m)
}

/// A Hermitian matrix, entries in Hartree when built from a Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(DenseMatrix);

impl HermitianMatrix {
    pub fn new(m: DenseMatrix) -> Result<Self> {
        let dev = m.max_hermitian_deviation();
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }
}

/// `Σ_j c_j P_j` as a dense matrix.
pub fn dense_hamiltonian(h: &PauliSumHamiltonian) -> Result<HermitianMatrix> {
    check_dense(h.n_qubits())?;
    let dim = 1usize << h.n_qubits();
    let mut m = DenseMatrix::zeros(dim);
    for (c, p) in h.terms() {
        let act = PauliAction::new(p);
        for i in 0..dim {
            m.data[(i ^ act.flip) * dim + i] += act.amp(i) * *c;
        }
    }
    HermitianMatrix::new(m)
}

/// All eigenvalues of a Hermitian matrix in ascending order.
///
/// The `d×d` complex matrix `A + iB` is embedded as the real symmetric
/// `[[A, -B], [B, A]]`, whose spectrum is that of `A + iB` with every
/// eigenvalue doubled; cyclic Jacobi diagonalizes it and the doubled values
/// are paired off.
pub fn eigenspectrum(m: &HermitianMatrix) -> Result<Vec<f64>> {
    let d = m.dim();
    let size = 2 * d;
    let mut a = vec![0.0f64; size * size];
    for i in 0..d {
        for j in 0..d {
            let z = m.0.get(i, j);
            a[i * size + j] = z.re;
            a[(i + d) * size + j + d] = z.re;
            a[i * size + j + d] = -z.im;
            a[(i + d) * size + j] = z.im;
        }
    }
    let mut doubled = jacobi_eigenvalues(&mut a, size);
    doubled.sort_by(f64::total_cmp);
    let scale = doubled.iter().fold(1.0f64, |s, v| s.max(v.abs()));
    let mut out = Vec::with_capacity(d);
    for pair in doubled.chunks(2) {
        if (pair[0] - pair[1]).abs() > 1e-9 * scale {
            return Err(Error::NotHermitian(pair[1] - pair[0]));
        }
        out.push(0.5 * (pair[0] + pair[1]));
    }
    Ok(out)
}

/// Cyclic Jacobi on a dense row-major symmetric matrix, returning the
/// (unsorted) diagonal after convergence. `a` is overwritten.
pub fn jacobi_eigenvalues(a: &mut [f64], n: usize) -> Vec<f64> {
    assert_eq!(a.len(), n * n);
    let frob: f64 = a.iter().map(|v| v * v).sum::<f64>().sqrt();
    let target = JACOBI_OFF_TOL * frob.max(1.0);
    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j] * a[i * n + j];
                }
            }
        }
        s.sqrt()
    };
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_norm(a) <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

/// Convenience: ascending spectrum of a Pauli-sum Hamiltonian.
pub fn hamiltonian_spectrum(h: &PauliSumHamiltonian) -> Result<Vec<f64>> {
    eigenspectrum(&dense_hamiltonian(h)?)
}

pub fn basis_state(n_qubits: usize, index: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
    v[index] = Complex64::new(1.0, 0.0);
    v
}

fn check_normalized(v: &[Complex64]) -> Result<()> {
    let norm_sq: f64 = v.iter().map(|a| a.norm_sqr()).sum();
    if (norm_sq - 1.0).abs() > 1e-8 {
        return Err(Error::NotNormalized(norm_sq));
    }
    Ok(())
}

/// `⟨v|H|v⟩` evaluated term by term on the state vector.
pub fn dense_expectation(v: &[Complex64], h: &PauliSumHamiltonian) -> Result<f64> {
    let dim = 1usize << h.n_qubits();
    if v.len() != dim {
        return Err(Error::SizeMismatch {
            expected: dim,
            found: v.len(),
        });
    }
    check_normalized(v)?;
    let mut total = Complex64::new(0.0, 0.0);
    for (c, p) in h.terms() {
        let act = PauliAction::new(p);
        let mut term = Complex64::new(0.0, 0.0);
        for (i, amp) in v.iter().enumerate() {
            term += v[i ^ act.flip].conj() * act.amp(i) * amp;
        }
        total += term * *c;
    }
    assert!(
        total.im.abs() <= 1e-10,
        "imaginary expectation {} from a Hermitian operator",
        total.im
    );
    Ok(total.re)
}

/// `|⟨u|v⟩|²` for unit vectors.
pub fn dense_overlap_sq(u: &[Complex64], v: &[Complex64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::SizeMismatch {
            expected: u.len(),
            found: v.len(),
        });
    }
    check_normalized(u)?;
    check_normalized(v)?;
    let inner: Complex64 = u.iter().zip(v).map(|(a, b)| a.conj() * b).sum();
    Ok(inner.norm_sqr())
}

/// Applies a 2×2 unitary `[[a, b], [c, d]]` to qubit `q` of an `n`-qubit state.
pub fn apply_single_qubit(v: &mut [Complex64], n_qubits: usize, q: usize, u: [[Complex64; 2]; 2]) {
    let stride = 1usize << (n_qubits - 1 - q);
    for base in 0..v.len() {
        if base & stride != 0 {
            continue;
        }
        let (a0, a1) = (v[base], v[base | stride]);
        v[base] = u[0][0] * a0 + u[0][1] * a1;
        v[base | stride] = u[1][0] * a0 + u[1][1] * a1;
    }
}

pub fn apply_cnot(v: &mut [Complex64], n_qubits: usize, control: usize, target: usize) {
    let cb = 1usize << (n_qubits - 1 - control);
    let tb = 1usize << (n_qubits - 1 - target);
    for i in 0..v.len() {
        if i & cb != 0 && i & tb == 0 {
            v.swap(i, i | tb);
        }
    }
}

/// `U(θ)|0…0⟩` for the given template and real angles (radians).
pub fn dense_state(template: &AnsatzTemplate, angles: &[f64]) -> Result<Vec<Complex64>> {
    template.check_len(angles.len())?;
    check_dense(template.n_qubits())?;
    Ok(run_dense(template, angles, basis_state(template.n_qubits(), 0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::parse_pauli;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn h(terms: &[(f64, &str)]) -> PauliSumHamiltonian {
        PauliSumHamiltonian::from_labels(terms.iter().copied()).unwrap()
    }

    /// Kronecker-product construction, independent of the bit-arithmetic path.
    fn kron_pauli(label: &str) -> DenseMatrix {
        let one = |ch: char| -> DenseMatrix {
            let z = c(0.0, 0.0);
            let rows = match ch {
                'I' => vec![vec![c(1.0, 0.0), z], vec![z, c(1.0, 0.0)]],
                'X' => vec![vec![z, c(1.0, 0.0)], vec![c(1.0, 0.0), z]],
                'Y' => vec![vec![z, c(0.0, -1.0)], vec![c(0.0, 1.0), z]],
                'Z' => vec![vec![c(1.0, 0.0), z], vec![z, c(-1.0, 0.0)]],
                _ => unreachable!(),
            };
            DenseMatrix::from_rows(rows)
        };
        let mut acc = DenseMatrix::identity(1);
        for ch in label.chars() {
            let f = one(ch);
            let d = acc.dim() * 2;
            let mut out = DenseMatrix::zeros(d);
            for i in 0..acc.dim() {
                for j in 0..acc.dim() {
                    for k in 0..2 {
                        for l in 0..2 {
                            out.set(2 * i + k, 2 * j + l, acc.get(i, j) * f.get(k, l));
                        }
                    }
                }
            }
            acc = out;
        }
        acc
    }

    fn all_labels(n: u32) -> Vec<String> {
        (0..4usize.pow(n))
            .map(|code| {
                (0..n)
                    .map(|j| ['I', 'X', 'Y', 'Z'][(code >> (2 * j)) & 3])
                    .collect()
            })
            .collect()
    }

    #[test]
    fn dense_pauli_matches_kronecker() {
        for n in 1..=3 {
            for label in all_labels(n) {
                assert_eq!(dense_pauli(&parse_pauli(&label).unwrap()).unwrap(), kron_pauli(&label));
            }
        }
    }

    #[test]
    fn multiply_matches_dense_products() {
        for n in 1..=2 {
            let labels = all_labels(n);
            for a in &labels {
                for b in &labels {
                    let pa = parse_pauli(a).unwrap();
                    let pb = parse_pauli(b).unwrap();
                    let prod = dense_pauli(&pa.multiply(&pb).unwrap()).unwrap();
                    assert_eq!(prod, kron_pauli(a).matmul(&kron_pauli(b)), "{a}·{b}");
                }
            }
        }
    }

    #[test]
    fn hamiltonian_examples() {
        let m = dense_hamiltonian(&h(&[(1.0, "Z")])).unwrap();
        assert_eq!(m.matrix().get(0, 0), c(1.0, 0.0));
        assert_eq!(m.matrix().get(1, 1), c(-1.0, 0.0));
        let m = dense_hamiltonian(&h(&[(1.0, "ZI"), (2.0, "IZ")])).unwrap();
        let diag: Vec<f64> = (0..4).map(|i| m.matrix().get(i, i).re).collect();
        assert_eq!(diag, [3.0, -1.0, 1.0, -3.0]);
        let m = dense_hamiltonian(&h(&[(0.5, "XX")])).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i + j == 3 { 0.5 } else { 0.0 };
                assert_eq!(m.matrix().get(i, j), c(expect, 0.0));
            }
        }
        assert!(dense_hamiltonian(&h(&[(1.0, &"Z".repeat(13))])).is_err());
    }

    #[test]
    fn spectrum_examples() {
        assert_eq!(
            round(&hamiltonian_spectrum(&h(&[(1.0, "ZI"), (2.0, "IZ")])).unwrap()),
            [-3.0, -1.0, 1.0, 3.0]
        );
        assert_eq!(round(&hamiltonian_spectrum(&h(&[(1.0, "X")])).unwrap()), [-1.0, 1.0]);
        // Y has complex entries; the embedding must handle them.
        assert_eq!(round(&hamiltonian_spectrum(&h(&[(1.0, "Y"), (1.0, "Z")])).unwrap()), [
            -2f64.sqrt(),
            2f64.sqrt()
        ]
        .map(|v| (v * 1e9).round() / 1e9));
    }

    fn round(v: &[f64]) -> Vec<f64> {
        v.iter().map(|x| (x * 1e9).round() / 1e9).collect()
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let mut m = DenseMatrix::zeros(2);
        m.set(0, 1, c(1.0, 0.0));
        assert!(matches!(HermitianMatrix::new(m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn spectrum_trace_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let labels = all_labels(2);
        for _ in 0..100 {
            let mut terms: Vec<(f64, &str)> = Vec::new();
            for l in &labels {
                if rng.gen_bool(0.5) {
                    terms.push((rng.gen_range(-2.0..2.0), l.as_str()));
                }
            }
            if terms.is_empty() {
                continue;
            }
            let ham = h(&terms);
            let m = dense_hamiltonian(&ham).unwrap();
            let evs = eigenspectrum(&m).unwrap();
            assert_eq!(evs.len(), 4);
            assert!(evs.windows(2).all(|w| w[0] <= w[1]));
            let identity_coef: f64 = ham
                .terms()
                .iter()
                .filter(|(_, p)| p.is_identity())
                .map(|(c, _)| *c)
                .sum();
            let sum: f64 = evs.iter().sum();
            assert!((sum - 4.0 * identity_coef).abs() < 1e-8);
            let sum_sq: f64 = evs.iter().map(|v| v * v).sum();
            let tr_sq = m.matrix().matmul(m.matrix()).trace().re;
            assert!((sum_sq - tr_sq).abs() < 1e-8);
        }
    }

    #[test]
    fn vector_examples() {
        let e0 = basis_state(1, 0);
        assert_eq!(dense_expectation(&e0, &h(&[(1.0, "Z")])).unwrap(), 1.0);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let bell = vec![c(r, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(r, 0.0)];
        assert!((dense_expectation(&bell, &h(&[(1.0, "XX")])).unwrap() - 1.0).abs() < 1e-15);
        let plus = vec![c(r, 0.0), c(r, 0.0)];
        assert!((dense_overlap_sq(&e0, &plus).unwrap() - 0.5).abs() < 1e-15);
        assert!(dense_overlap_sq(&e0, &bell).is_err());
        assert!(dense_expectation(&[c(1.0, 0.0), c(1.0, 0.0)], &h(&[(1.0, "Z")])).is_err());
    }

    #[test]
    fn expectation_matches_matrix() {
        let ham = h(&[(0.3, "XY"), (-1.1, "ZZ"), (0.7, "YI"), (0.2, "II")]);
        let m = dense_hamiltonian(&ham).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut v: Vec<Complex64> = (0..4).map(|_| c(rng.gen(), rng.gen())).collect();
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|a| *a /= norm);
        let mv = m.matrix().apply(&v);
        let direct: Complex64 = v.iter().zip(&mv).map(|(a, b)| a.conj() * b).sum();
        assert!((dense_expectation(&v, &ham).unwrap() - direct.re).abs() < 1e-12);
    }

    #[test]
    fn cnot_and_single_qubit_gates() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let had = [[c(r, 0.0), c(r, 0.0)], [c(r, 0.0), c(-r, 0.0)]];
        let mut v = basis_state(2, 0);
        apply_single_qubit(&mut v, 2, 0, had);
        apply_cnot(&mut v, 2, 0, 1);
        assert!((v[0].re - r).abs() < 1e-15 && (v[3].re - r).abs() < 1e-15);
        assert_eq!(v[1], c(0.0, 0.0));
    }
}
