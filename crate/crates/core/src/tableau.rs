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

//! Stabilizer tableau simulation with exact expectation values and overlaps.
//!
//! The tableau is stored column-major: for every qubit `q` there is one
//! 128-bit mask of X bits and one of Z bits across the `2n` generator rows
//! (rows `0..n` are destabilizers, rows `n..2n` stabilizers). Single- and
//! two-qubit Clifford gates then cost a handful of word operations. Global
//! phase is not represented.

use std::fmt;

use crate::error::{Error, Result};
use crate::pauli::{check_same, PauliString, MAX_QUBITS};

/// Clifford gates understood by the tableau.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    S(usize),
    SDag(usize),
    X(usize),
    Z(usize),
    /// `Cnot(control, target)`
    Cnot(usize, usize),
}

impl Gate {
    fn check(&self, n_qubits: usize) -> Result<()> {
        let in_range = |q: usize| {
            if q < n_qubits {
                Ok(())
            } else {
                Err(Error::QubitOutOfRange { index: q, n_qubits })
            }
        };
        match *self {
            Gate::H(q) | Gate::S(q) | Gate::SDag(q) | Gate::X(q) | Gate::Z(q) => in_range(q),
            Gate::Cnot(c, t) => {
                in_range(c)?;
                in_range(t)?;
                if c == t {
                    return Err(Error::RepeatedQubit(c));
                }
                Ok(())
            }
        }
    }

    /// Same gate kind acting on `q` (single-qubit gates only).
    pub fn on_qubit(&self, q: usize) -> Gate {
        match *self {
            Gate::H(_) => Gate::H(q),
            Gate::S(_) => Gate::S(q),
            Gate::SDag(_) => Gate::SDag(q),
            Gate::X(_) => Gate::X(q),
            Gate::Z(_) => Gate::Z(q),
            Gate::Cnot(..) => panic!("on_qubit called on a two-qubit gate"),
        }
    }
}

/// Tableau of an `n`-qubit stabilizer state.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StabilizerTableau {
    n: usize,
    xs: Vec<u128>,
    zs: Vec<u128>,
    signs: u128,
}

impl StabilizerTableau {
    /// The all-zeros state: stabilizers `+Z_j`, destabilizers `X_j`.
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::QubitCount {
                got: n_qubits,
                max: MAX_QUBITS,
            });
        }
        let xs = (0..n_qubits).map(|q| 1u128 << q).collect();
        let zs = (0..n_qubits).map(|q| 1u128 << (q + n_qubits)).collect();
        Ok(Self {
            n: n_qubits,
            xs,
            zs,
            signs: 0,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn apply(&mut self, gate: Gate) -> Result<()> {
        gate.check(self.n)?;
        self.apply_unchecked(gate);
        Ok(())
    }

    pub fn apply_all(&mut self, gates: &[Gate]) -> Result<()> {
        gates.iter().try_for_each(|&g| self.apply(g))
    }

    #[inline]
    pub(crate) fn apply_unchecked(&mut self, gate: Gate) {
        match gate {
            Gate::H(q) => {
                let (x, z) = (self.xs[q], self.zs[q]);
                self.signs ^= x & z;
                self.xs[q] = z;
                self.zs[q] = x;
            }
            Gate::S(q) => {
                let x = self.xs[q];
                self.signs ^= x & self.zs[q];
                self.zs[q] ^= x;
            }
            Gate::SDag(q) => {
                let x = self.xs[q];
                self.signs ^= x & !self.zs[q];
                self.zs[q] ^= x;
            }
            Gate::X(q) => self.signs ^= self.zs[q],
            Gate::Z(q) => self.signs ^= self.xs[q],
            Gate::Cnot(c, t) => {
                let (xc, zc, xt, zt) = (self.xs[c], self.zs[c], self.xs[t], self.zs[t]);
                self.signs ^= xc & zt & !(xt ^ zc);
                self.xs[t] = xt ^ xc;
                self.zs[c] = zc ^ zt;
            }
        }
    }

    fn row(&self, i: usize) -> PauliString {
        let mut x = 0u64;
        let mut z = 0u64;
        for q in 0..self.n {
            x |= ((self.xs[q] >> i & 1) as u64) << q;
            z |= ((self.zs[q] >> i & 1) as u64) << q;
        }
        let phase = if self.signs >> i & 1 == 1 { 2 } else { 0 };
        PauliString::from_raw(self.n, x, z, phase)
    }

    /// Stabilizer generator `i` as a signed Pauli (phase 0 or 2).
    pub fn stabilizer(&self, i: usize) -> PauliString {
        assert!(i < self.n);
        self.row(self.n + i)
    }

    /// Destabilizer row `i`, sign included.
    pub fn destabilizer(&self, i: usize) -> PauliString {
        assert!(i < self.n);
        self.row(i)
    }

    pub fn stabilizers(&self) -> Vec<PauliString> {
        (0..self.n).map(|i| self.stabilizer(i)).collect()
    }

    fn stab_mask(&self) -> u128 {
        let low = if self.n == 64 {
            u64::MAX as u128
        } else {
            (1u128 << self.n) - 1
        };
        low << self.n
    }

    /// Rows that anticommute with `p`, as a mask over row indices.
    #[inline]
    fn anticommuting_rows(&self, p: &PauliString) -> u128 {
        let mut mask = 0u128;
        let mut bits = p.x_bits() | p.z_bits();
        while bits != 0 {
            let q = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if p.z_bits() >> q & 1 == 1 {
                mask ^= self.xs[q];
            }
            if p.x_bits() >> q & 1 == 1 {
                mask ^= self.zs[q];
            }
        }
        mask
    }

    /// `⟨ψ|P|ψ⟩ ∈ {-1, 0, +1}` for a phase-free Pauli `P`.
    pub fn pauli_expectation(&self, p: &PauliString) -> Result<i8> {
        check_same(self.n, p.n_qubits())?;
        if p.phase_ipow() != 0 {
            return Err(Error::InvalidLabel {
                label: p.to_string(),
                reason: "expectation requires a phase-free Pauli".into(),
            });
        }
        Ok(self.expectation_unchecked(p))
    }

    #[inline]
    pub(crate) fn expectation_unchecked(&self, p: &PauliString) -> i8 {
        let anti = self.anticommuting_rows(p);
        if anti & self.stab_mask() != 0 {
            return 0;
        }
        // P commutes with the whole group, so ±P is the product of the
        // stabilizers whose paired destabilizer anticommutes with P.
        let mut acc = PauliString::from_raw(self.n, 0, 0, 0);
        let mut destab = anti;
        while destab != 0 {
            let i = destab.trailing_zeros() as usize;
            destab &= destab - 1;
            acc = acc.multiply_unchecked(&self.row(self.n + i));
        }
        debug_assert_eq!((acc.x_bits(), acc.z_bits()), (p.x_bits(), p.z_bits()));
        debug_assert!(acc.phase_ipow().is_multiple_of(2));
        if acc.phase_ipow() == 0 {
            1
        } else {
            -1
        }
    }

    /// All `2^n` signed elements of the stabilizer group, in Gray-code order.
    pub fn group_elements(&self) -> Vec<PauliString> {
        assert!(self.n <= 24, "stabilizer group too large to enumerate");
        let gens = self.stabilizers();
        let mut out = Vec::with_capacity(1 << self.n);
        let mut acc = PauliString::from_raw(self.n, 0, 0, 0);
        out.push(acc);
        for k in 1usize..(1 << self.n) {
            let j = k.trailing_zeros() as usize;
            acc = acc.multiply_unchecked(&gens[j]);
            out.push(acc);
        }
        out
    }

    /// Checks the structural tableau invariants; returns a description of the
    /// first violation found.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let n = self.n;
        let stabs = self.stabilizers();
        let destabs: Vec<_> = (0..n).map(|i| self.destabilizer(i)).collect();
        for i in 0..n {
            for j in 0..n {
                if !stabs[i].commutes_unchecked(&stabs[j]) {
                    return Err(format!("stabilizers {i} and {j} anticommute"));
                }
                let anti = !destabs[i].commutes_unchecked(&stabs[j]);
                if anti != (i == j) {
                    return Err(format!(
                        "destabilizer {i} / stabilizer {j} commutation is wrong"
                    ));
                }
            }
        }
        let rows: Vec<u128> = stabs
            .iter()
            .map(|p| p.x_bits() as u128 | (p.z_bits() as u128) << 64)
            .collect();
        if gf2_rank(rows) != n {
            return Err("stabilizer rows are linearly dependent".into());
        }
        Ok(())
    }
}

impl fmt::Debug for StabilizerTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let stabs: Vec<String> = self
            .stabilizers()
            .iter()
            .map(|p| {
                let sign = if p.phase_ipow() == 2 { '-' } else { '+' };
                format!("{sign}{}", p.label())
            })
            .collect();
        write!(f, "StabilizerTableau {{{}}}", stabs.join(", "))
    }
}

/// Rank over GF(2) of a set of bit rows.
pub(crate) fn gf2_rank(mut rows: Vec<u128>) -> usize {
    let mut rank = 0;
    for bit in 0..128 {
        let m = 1u128 << bit;
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r] & m != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let p = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && *row & m != 0 {
                *row ^= p;
            }
        }
        rank += 1;
    }
    rank
}

/// `|⟨a|b⟩|²` by projector expansion over `b`'s stabilizer group:
/// `2^{-n} Σ_{P ∈ S_b} ⟨a|P|a⟩`. The result is exactly `0` or `2^{-s}`.
pub fn overlap_sq(a: &StabilizerTableau, b: &StabilizerTableau) -> Result<f64> {
    check_same(a.n, b.n)?;
    Ok(overlap_sq_with_group(a, &b.group_elements()))
}

/// Projector-expansion overlap against a precomputed signed group.
pub(crate) fn overlap_sq_with_group(a: &StabilizerTableau, group: &[PauliString]) -> f64 {
    let total: i64 = group
        .iter()
        .map(|g| {
            let e = a.expectation_unchecked(&g.unsigned()) as i64;
            if g.phase_ipow() == 2 {
                -e
            } else {
                e
            }
        })
        .sum();
    debug_assert!(total >= 0);
    total as f64 / group.len() as f64
}

/// `|⟨a|b⟩|²` via the GF(2) intersection of the two stabilizer groups.
///
/// The part of `b`'s group that commutes with every generator of `a` is the
/// (unsigned) intersection, of dimension `d`. If any of its basis elements
/// carries opposite signs in the two groups the states are orthogonal,
/// otherwise the overlap is `2^{d-n}`. Polynomial in `n`; agrees exactly with
/// [`overlap_sq`].
pub fn overlap_sq_fast(a: &StabilizerTableau, b: &StabilizerTableau) -> Result<f64> {
    check_same(a.n, b.n)?;
    let n = a.n;
    let a_gens = a.stabilizers();
    let b_gens = b.stabilizers();
    // Row i: which a-generators anticommute with b-generator i, tagged with
    // an identity block that records the combination of b-generators.
    let mut rows: Vec<(u64, u128)> = b_gens
        .iter()
        .enumerate()
        .map(|(i, bg)| {
            let anti = a_gens
                .iter()
                .enumerate()
                .filter(|(_, ag)| !ag.commutes_unchecked(bg))
                .fold(0u64, |m, (j, _)| m | 1 << j);
            (anti, 1u128 << i)
        })
        .collect();
    // Eliminate on the commutation bits; rows that reach zero span the kernel.
    let mut rank = 0;
    for bit in 0..n {
        let m = 1u64 << bit;
        let Some(pivot) = (rank..n).find(|&r| rows[r].0 & m != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let p = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.0 & m != 0 {
                row.0 ^= p.0;
                row.1 ^= p.1;
            }
        }
        rank += 1;
    }
    let kernel = &rows[rank..];
    for &(_, combo) in kernel {
        let mut elem = PauliString::from_raw(n, 0, 0, 0);
        for (i, g) in b_gens.iter().enumerate() {
            if combo >> i & 1 == 1 {
                elem = elem.multiply_unchecked(g);
            }
        }
        let sign_b: i8 = if elem.phase_ipow() == 0 { 1 } else { -1 };
        let sign_a = a.expectation_unchecked(&elem.unsigned());
        debug_assert_ne!(sign_a, 0);
        if sign_a != sign_b {
            return Ok(0.0);
        }
    }
    let d = kernel.len() as i32;
    Ok(2f64.powi(d - n as i32))
}
