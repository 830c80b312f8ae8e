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

//! Pauli operators in binary symplectic form and real-weighted Pauli sums.
//!
//! A [`PauliString`] on `n` qubits is stored as two packed bit rows `x` and
//! `z` (bit `j` is qubit `j`) plus an `i`-power phase. The bit pattern
//! `(x, z) = (1, 1)` denotes `Y` itself, not `XZ`; every `i` that appears when
//! multiplying is accounted for in the phase.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest register handled by the packed single-word representation.
pub const MAX_QUBITS: usize = 64;

pub(crate) fn qubit_mask(n_qubits: usize) -> u64 {
    if n_qubits >= 64 {
        u64::MAX
    } else {
        (1u64 << n_qubits) - 1
    }
}

/// `i`-power picked up by the product of two labeled Paulis, `(x1,z1)·(x2,z2)`.
///
/// Per qubit: `XY = iZ`, `YZ = iX`, `ZX = iY` contribute `+1`, the reversed
/// orders contribute `-1`, everything else `0`.
#[inline]
pub(crate) fn product_ipow(x1: u64, z1: u64, x2: u64, z2: u64) -> u8 {
    let p_x = x1 & !z1;
    let p_y = x1 & z1;
    let p_z = !x1 & z1;
    let q_x = x2 & !z2;
    let q_y = x2 & z2;
    let q_z = !x2 & z2;
    let plus = (p_x & q_y) | (p_y & q_z) | (p_z & q_x);
    let minus = (p_y & q_x) | (p_z & q_y) | (p_x & q_z);
    let d = plus.count_ones() as i64 - minus.count_ones() as i64;
    d.rem_euclid(4) as u8
}

/// Single-qubit Pauli factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// An `n`-qubit Pauli operator `i^phase · P_0 ⊗ … ⊗ P_{n-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    n_qubits: usize,
    x: u64,
    z: u64,
    phase: u8,
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Result<Self> {
        check_qubits(n_qubits)?;
        Ok(Self {
            n_qubits,
            x: 0,
            z: 0,
            phase: 0,
        })
    }

    /// Builds an operator from raw bit rows. Bits above `n_qubits` must be clear.
    pub fn from_bits(n_qubits: usize, x: u64, z: u64, phase: u8) -> Result<Self> {
        check_qubits(n_qubits)?;
        let mask = qubit_mask(n_qubits);
        if x & !mask != 0 || z & !mask != 0 {
            return Err(Error::QubitOutOfRange {
                index: 63 - (x | z).leading_zeros() as usize,
                n_qubits,
            });
        }
        Ok(Self {
            n_qubits,
            x,
            z,
            phase: phase & 3,
        })
    }

    pub(crate) const fn from_raw(n_qubits: usize, x: u64, z: u64, phase: u8) -> Self {
        Self {
            n_qubits,
            x,
            z,
            phase: phase & 3,
        }
    }

    /// The single-qubit Pauli `p` on qubit `qubit`, identity elsewhere.
    pub fn single(n_qubits: usize, qubit: usize, p: Pauli) -> Result<Self> {
        check_qubits(n_qubits)?;
        if qubit >= n_qubits {
            return Err(Error::QubitOutOfRange {
                index: qubit,
                n_qubits,
            });
        }
        let bit = 1u64 << qubit;
        let (x, z) = match p {
            Pauli::I => (0, 0),
            Pauli::X => (bit, 0),
            Pauli::Y => (bit, bit),
            Pauli::Z => (0, bit),
        };
        Ok(Self::from_raw(n_qubits, x, z, 0))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn x_bits(&self) -> u64 {
        self.x
    }

    pub fn z_bits(&self) -> u64 {
        self.z
    }

    /// Exponent `k` of the global factor `i^k`.
    pub fn phase_ipow(&self) -> u8 {
        self.phase
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        Pauli::from_bits(self.x >> qubit & 1 == 1, self.z >> qubit & 1 == 1)
    }

    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Same operator with the phase dropped.
    pub fn unsigned(&self) -> Self {
        Self {
            phase: 0,
            ..*self
        }
    }

    pub fn with_phase(&self, phase: u8) -> Self {
        Self {
            phase: phase & 3,
            ..*self
        }
    }

    /// Symplectic inner product; `true` when the operators commute.
    pub fn commutes(&self, other: &Self) -> Result<bool> {
        check_same(self.n_qubits, other.n_qubits)?;
        Ok(self.commutes_unchecked(other))
    }

    #[inline]
    pub(crate) fn commutes_unchecked(&self, other: &Self) -> bool {
        ((self.x & other.z) ^ (self.z & other.x)).count_ones().is_multiple_of(2)
    }

    /// Exact operator product `self · other`, phases included.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        check_same(self.n_qubits, other.n_qubits)?;
        Ok(self.multiply_unchecked(other))
    }

    #[inline]
    pub(crate) fn multiply_unchecked(&self, other: &Self) -> Self {
        let phase = self.phase + other.phase + product_ipow(self.x, self.z, other.x, other.z);
        Self {
            n_qubits: self.n_qubits,
            x: self.x ^ other.x,
            z: self.z ^ other.z,
            phase: phase & 3,
        }
    }

    /// Label without the phase prefix, qubit 0 leftmost.
    pub fn label(&self) -> String {
        (0..self.n_qubits).map(|q| self.get(q).as_char()).collect()
    }
}

/// Parses a label over `I`, `X`, `Y`, `Z`; character `j` acts on qubit `j`.
pub fn parse_pauli(label: &str) -> Result<PauliString> {
    let invalid = |reason: String| Error::InvalidLabel {
        label: label.to_string(),
        reason,
    };
    let n = label.chars().count();
    if n == 0 {
        return Err(invalid("empty label".into()));
    }
    if n > MAX_QUBITS {
        return Err(invalid(format!("more than {MAX_QUBITS} qubits")));
    }
    let mut x = 0u64;
    let mut z = 0u64;
    for (j, c) in label.chars().enumerate() {
        let bit = 1u64 << j;
        match c {
            'I' => {}
            'X' => x |= bit,
            'Y' => {
                x |= bit;
                z |= bit;
            }
            'Z' => z |= bit,
            other => return Err(invalid(format!("invalid character {other:?} at position {j}"))),
        }
    }
    Ok(PauliString::from_raw(n, x, z, 0))
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_pauli(s)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = ["", "i", "-", "-i"][self.phase as usize];
        write!(f, "{prefix}{}", self.label())
    }
}

fn check_qubits(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(Error::QubitCount {
            got: n_qubits,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}

pub(crate) fn check_same(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::SizeMismatch { expected, found });
    }
    Ok(())
}

/// A real-weighted sum of phase-free Pauli strings, coefficients in Hartree.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSumHamiltonian {
    n_qubits: usize,
    terms: Vec<(f64, PauliString)>,
}

impl PauliSumHamiltonian {
    /// Builds a Hamiltonian, merging repeated labels by adding coefficients.
    /// Term order follows first appearance.
    pub fn new(terms: impl IntoIterator<Item = (f64, PauliString)>) -> Result<Self> {
        let mut merged: Vec<(f64, PauliString)> = Vec::new();
        let mut index: HashMap<(u64, u64), usize> = HashMap::new();
        let mut n_qubits = None;
        for (c, p) in terms {
            if !c.is_finite() {
                return Err(Error::Config(format!("non-finite coefficient {c} on {p}")));
            }
            if p.phase_ipow() != 0 {
                return Err(Error::InvalidLabel {
                    label: p.to_string(),
                    reason: "Hamiltonian terms must be phase-free".into(),
                });
            }
            match n_qubits {
                None => n_qubits = Some(p.n_qubits()),
                Some(n) => check_same(n, p.n_qubits())?,
            }
            match index.get(&(p.x, p.z)) {
                Some(&i) => merged[i].0 += c,
                None => {
                    index.insert((p.x, p.z), merged.len());
                    merged.push((c, p));
                }
            }
        }
        let n_qubits = n_qubits.ok_or(Error::EmptyHamiltonian)?;
        if let Some((c, p)) = merged.iter().find(|(c, _)| !c.is_finite()) {
            return Err(Error::Config(format!("coefficient of {p} overflows to {c} after merging")));
        }
        Ok(Self {
            n_qubits,
            terms: merged,
        })
    }

    /// Convenience constructor from `(coefficient, label)` pairs.
    pub fn from_labels<'a>(terms: impl IntoIterator<Item = (f64, &'a str)>) -> Result<Self> {
        let parsed = terms
            .into_iter()
            .map(|(c, l)| parse_pauli(l).map(|p| (c, p)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parsed)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[(f64, PauliString)] {
        &self.terms
    }

    /// `a·self + b·other`, with like terms merged.
    pub fn linear_combination(&self, a: f64, other: &Self, b: f64) -> Result<Self> {
        check_same(self.n_qubits, other.n_qubits)?;
        Self::new(
            self.terms
                .iter()
                .map(|&(c, p)| (a * c, p))
                .chain(other.terms.iter().map(|&(c, p)| (b * c, p))),
        )
    }

    /// Sum of absolute coefficients.
    pub fn coefficient_one_norm(&self) -> f64 {
        self.terms.iter().map(|(c, _)| c.abs()).sum()
    }
}

/// Parses the line-oriented Hamiltonian text format: `<coefficient> <label>`
/// per line, `#` comment lines and blank lines ignored.
pub fn parse_hamiltonian(text: &str) -> Result<PauliSumHamiltonian> {
    let mut terms = Vec::new();
    let mut width: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |reason: String| Error::Parse {
            line: line_no,
            reason,
        };
        let mut fields = line.split_whitespace();
        let (Some(coef), Some(label), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(parse_err("expected `<coefficient> <label>`".into()));
        };
        let c: f64 = coef
            .parse()
            .map_err(|_| parse_err(format!("invalid coefficient {coef:?}")))?;
        if !c.is_finite() {
            return Err(parse_err(format!("non-finite coefficient {coef:?}")));
        }
        let p = parse_pauli(label).map_err(|e| parse_err(e.to_string()))?;
        match width {
            None => width = Some(p.n_qubits()),
            Some(w) if w != p.n_qubits() => {
                return Err(parse_err(format!(
                    "label {label:?} has {} qubits, earlier terms have {w}",
                    p.n_qubits()
                )))
            }
            _ => {}
        }
        terms.push((c, p));
    }
    PauliSumHamiltonian::new(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliString {
        parse_pauli(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        let xi = p("XI");
        assert_eq!((xi.x_bits(), xi.z_bits(), xi.phase_ipow()), (0b01, 0b00, 0));
        let y = p("Y");
        assert_eq!((y.x_bits(), y.z_bits(), y.phase_ipow()), (1, 1, 0));
        let zz = p("ZZ");
        assert_eq!((zz.x_bits(), zz.z_bits(), zz.phase_ipow()), (0, 0b11, 0));
    }

    #[test]
    fn parse_rejects_bad_labels() {
        assert!(parse_pauli("").is_err());
        assert!(parse_pauli("XQ").is_err());
        assert!(parse_pauli("xz").is_err());
        assert!(parse_pauli(&"I".repeat(65)).is_err());
    }

    #[test]
    fn commutation_examples() {
        assert!(!p("X").commutes(&p("Z")).unwrap());
        assert!(p("XX").commutes(&p("ZZ")).unwrap());
        assert!(p("ZI").commutes(&p("IZ")).unwrap());
        assert!(p("X").commutes(&p("ZZ")).is_err());
    }

    #[test]
    fn multiplication_examples() {
        let xz = p("X").multiply(&p("Z")).unwrap();
        assert_eq!(xz.label(), "Y");
        assert_eq!(xz.phase_ipow(), 3);
        let zx = p("Z").multiply(&p("X")).unwrap();
        assert_eq!(zx.label(), "Y");
        assert_eq!(zx.phase_ipow(), 1);
        let xx = p("X").multiply(&p("X")).unwrap();
        assert!(xx.is_identity());
        assert_eq!(xx.phase_ipow(), 0);
        assert!(p("X").multiply(&p("XX")).is_err());
    }

    #[test]
    fn label_round_trip_all_small() {
        for n in 1..=3u32 {
            for code in 0..4usize.pow(n) {
                let label: String = (0..n)
                    .map(|j| ['I', 'X', 'Y', 'Z'][(code >> (2 * j)) & 3])
                    .collect();
                assert_eq!(p(&label).to_string(), label);
            }
        }
    }

    #[test]
    fn display_shows_phase() {
        assert_eq!(p("XZ").with_phase(3).to_string(), "-iXZ");
        assert_eq!(p("Y").with_phase(2).to_string(), "-Y");
    }

    #[test]
    fn hamiltonian_merges_duplicates() {
        let h = PauliSumHamiltonian::from_labels([(0.5, "XX"), (1.0, "ZI"), (0.5, "XX")]).unwrap();
        assert_eq!(h.terms().len(), 2);
        assert_eq!(h.terms()[0], (1.0, p("XX")));
        assert!(PauliSumHamiltonian::from_labels([(1.0, "X"), (1.0, "XX")]).is_err());
        assert!(matches!(
            PauliSumHamiltonian::new(Vec::new()),
            Err(Error::EmptyHamiltonian)
        ));
        assert!(PauliSumHamiltonian::from_labels([(1e308, "ZZ"), (1e308, "ZZ")]).is_err());
    }

    #[test]
    fn parse_hamiltonian_text() {
        let h = parse_hamiltonian("# toy\n1.0 ZI\n\n2.0 IZ\n").unwrap();
        assert_eq!(h.n_qubits(), 2);
        assert_eq!(h.terms().len(), 2);
        let merged = parse_hamiltonian("0.5 XX\n0.5 XX").unwrap();
        assert_eq!(merged.terms(), &[(1.0, p("XX"))]);
        match parse_hamiltonian("1.0 ZQ") {
            Err(Error::Parse { line: 1, reason }) => assert!(reason.contains("'Q'"), "{reason}"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_hamiltonian("1.0 Z\n2.0 ZZ"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_hamiltonian("# nothing\n"), Err(Error::EmptyHamiltonian)));
        assert!(parse_hamiltonian("nan Z").is_err());
        assert!(parse_hamiltonian("1.0 Z extra").is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn pauli(n: usize) -> impl Strategy<Value = PauliString> {
            let mask = qubit_mask(n);
            (any::<u64>(), any::<u64>(), 0u8..4)
                .prop_map(move |(x, z, ph)| PauliString::from_raw(n, x & mask, z & mask, ph))
        }

        proptest! {
            #[test]
            fn commute_iff_products_agree(a in pauli(5), b in pauli(5)) {
                let ab = a.multiply(&b).unwrap();
                let ba = b.multiply(&a).unwrap();
                prop_assert_eq!(ab.unsigned(), ba.unsigned());
                let offset = (ab.phase_ipow() + 4 - ba.phase_ipow()) % 4;
                prop_assert_eq!(a.commutes(&b).unwrap(), offset == 0);
                prop_assert!(offset == 0 || offset == 2);
            }

            #[test]
            fn multiply_is_associative(a in pauli(4), b in pauli(4), c in pauli(4)) {
                let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
                let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
                prop_assert_eq!(left, right);
            }

            #[test]
            fn labeled_paulis_square_to_identity(a in pauli(6)) {
                let a = a.unsigned();
                let sq = a.multiply(&a).unwrap();
                prop_assert!(sq.is_identity());
                prop_assert_eq!(sq.phase_ipow(), 0);
            }
        }
    }
}
