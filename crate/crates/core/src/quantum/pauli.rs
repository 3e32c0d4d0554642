//! Pauli strings and Hermitian observables written as sums of them.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use super::mat2::Mat2;
use super::state::StateVector;
use crate::error::{Error, Result};

/// Imaginary coefficient residue tolerated before an observable is rejected.
pub const HERMITIAN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    /// Position in the (I, X, Y, Z) coordinate order.
    pub fn index(self) -> usize {
        match self {
            Pauli::I => 0,
            Pauli::X => 1,
            Pauli::Y => 2,
            Pauli::Z => 3,
        }
    }

    pub fn matrix(self) -> Mat2 {
        match self {
            Pauli::I => Mat2::identity(),
            Pauli::X => Mat2::pauli_x(),
            Pauli::Y => Mat2::pauli_y(),
            Pauli::Z => Mat2::pauli_z(),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Pauli> {
        match c.to_ascii_uppercase() {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// Scaled tensor product of single-qubit Paulis. Letter 0 acts on qubit 1.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliString {
    pub letters: Vec<Pauli>,
    pub coefficient: Complex64,
}

impl PauliString {
    pub fn new(letters: Vec<Pauli>, coefficient: Complex64) -> Self {
        PauliString {
            letters,
            coefficient,
        }
    }

    pub fn real(letters: Vec<Pauli>, coefficient: f64) -> Self {
        PauliString::new(letters, Complex64::new(coefficient, 0.0))
    }

    /// Parses a compact label such as `"YYZZ"`.
    pub fn parse(label: &str, coefficient: f64) -> Option<Self> {
        let letters = label
            .chars()
            .map(Pauli::from_symbol)
            .collect::<Option<Vec<_>>>()?;
        Some(PauliString::real(letters, coefficient))
    }

    pub fn n_qubits(&self) -> usize {
        self.letters.len()
    }

    pub fn label(&self) -> String {
        self.letters.iter().map(|p| p.symbol()).collect()
    }

    fn masks(&self) -> (usize, usize, u32) {
        let n = self.letters.len();
        let mut flip = 0usize;
        let mut phase = 0usize;
        let mut ys = 0u32;
        for (q, p) in self.letters.iter().enumerate() {
            let bit = 1usize << (n - 1 - q);
            match p {
                Pauli::I => {}
                Pauli::X => flip |= bit,
                Pauli::Z => phase |= bit,
                Pauli::Y => {
                    flip |= bit;
                    phase |= bit;
                    ys += 1;
                }
            }
        }
        (flip, phase, ys)
    }

    /// `<state| P |state>` including the coefficient.
    pub fn expectation(&self, state: &StateVector) -> Result<Complex64> {
        if state.n_qubits() != self.n_qubits() {
            return Err(Error::DimensionMismatch {
                left: state.n_qubits(),
                right: self.n_qubits(),
            });
        }
        let (flip, phase_mask, ys) = self.masks();
        let global = Complex64::i().powu(ys);
        let amps = state.amplitudes();
        let mut acc = Complex64::new(0.0, 0.0);
        for (b, a) in amps.iter().enumerate() {
            let sign = if (b & phase_mask).count_ones() % 2 == 0 {
                1.0
            } else {
                -1.0
            };
            acc += amps[b ^ flip].conj() * a * sign;
        }
        Ok(acc * global * self.coefficient)
    }

    /// Dense 2^n x 2^n realization, row-major. Intended for small n.
    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        let n = self.letters.len();
        let dim = 1usize << n;
        let (flip, phase_mask, ys) = self.masks();
        let global = Complex64::i().powu(ys) * self.coefficient;
        let mut m = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
        for b in 0..dim {
            let sign = if (b & phase_mask).count_ones() % 2 == 0 {
                1.0
            } else {
                -1.0
            };
            m[b ^ flip][b] = global * sign;
        }
        m
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:+.6}) {}", self.coefficient.re, self.label())
    }
}

/// Hermitian operator as a real-weighted sum of Pauli strings.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    n_qubits: usize,
    terms: Vec<PauliString>,
}

impl Observable {
    /// Builds an observable, rejecting mixed qubit counts and complex weights.
    pub fn new(n_qubits: usize, terms: Vec<PauliString>) -> Result<Self> {
        for t in &terms {
            if t.n_qubits() != n_qubits {
                return Err(Error::DimensionMismatch {
                    left: n_qubits,
                    right: t.n_qubits(),
                });
            }
            if t.coefficient.im.abs() > HERMITIAN_TOL {
                return Err(Error::NonHermitian(t.coefficient.im));
            }
        }
        let terms = terms
            .into_iter()
            .map(|t| PauliString::real(t.letters, t.coefficient.re))
            .collect();
        Ok(Observable { n_qubits, terms })
    }

    pub fn zero(n_qubits: usize) -> Self {
        Observable {
            n_qubits,
            terms: Vec::new(),
        }
    }

    pub fn identity(n_qubits: usize) -> Self {
        Observable {
            n_qubits,
            terms: vec![PauliString::real(vec![Pauli::I; n_qubits], 1.0)],
        }
    }

    /// Sum of `weights[letters]`; entries whose weight is below `tol` are dropped.
    pub fn from_weights(n_qubits: usize, weights: BTreeMap<Vec<Pauli>, f64>, tol: f64) -> Self {
        let terms = weights
            .into_iter()
            .filter(|(_, w)| w.abs() > tol)
            .map(|(letters, w)| PauliString::real(letters, w))
            .collect();
        Observable { n_qubits, terms }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[PauliString] {
        &self.terms
    }

    /// Merges repeated strings and removes near-zero weights.
    pub fn simplified(&self, tol: f64) -> Observable {
        let mut weights: BTreeMap<Vec<Pauli>, f64> = BTreeMap::new();
        for t in &self.terms {
            *weights.entry(t.letters.clone()).or_insert(0.0) += t.coefficient.re;
        }
        Observable::from_weights(self.n_qubits, weights, tol)
    }

    /// Total weight carried by `letters` (0 when absent).
    pub fn coefficient(&self, letters: &[Pauli]) -> f64 {
        self.terms
            .iter()
            .filter(|t| t.letters == letters)
            .map(|t| t.coefficient.re)
            .sum()
    }

    pub fn coefficient_of(&self, label: &str) -> f64 {
        let letters: Vec<Pauli> = label.chars().filter_map(Pauli::from_symbol).collect();
        self.coefficient(&letters)
    }

    /// Basis eigenvalues when every term is built from I and Z only.
    pub fn diagonal(&self) -> Option<Vec<f64>> {
        let dim = 1usize << self.n_qubits;
        let mut diag = vec![0.0; dim];
        for t in &self.terms {
            if t.letters.iter().any(|p| matches!(p, Pauli::X | Pauli::Y)) {
                return None;
            }
            let (_, phase_mask, _) = t.masks();
            for (b, d) in diag.iter_mut().enumerate() {
                let sign = if (b & phase_mask).count_ones() % 2 == 0 {
                    1.0
                } else {
                    -1.0
                };
                *d += sign * t.coefficient.re;
            }
        }
        Some(diag)
    }

    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        let dim = 1usize << self.n_qubits;
        let mut m = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
        for t in &self.terms {
            for (r, row) in t.to_dense().into_iter().enumerate() {
                for (c, v) in row.into_iter().enumerate() {
                    m[r][c] += v;
                }
            }
        }
        m
    }

    /// Largest weight difference over the union of both supports.
    pub fn max_abs_diff(&self, other: &Observable) -> f64 {
        let mut weights: BTreeMap<Vec<Pauli>, f64> = BTreeMap::new();
        for t in &self.terms {
            *weights.entry(t.letters.clone()).or_insert(0.0) += t.coefficient.re;
        }
        for t in &other.terms {
            *weights.entry(t.letters.clone()).or_insert(0.0) -= t.coefficient.re;
        }
        weights.values().fold(0.0, |m, w| m.max(w.abs()))
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kron(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
        let (ra, rb) = (a.len(), b.len());
        let mut out = vec![vec![Complex64::new(0.0, 0.0); ra * rb]; ra * rb];
        for i in 0..ra {
            for j in 0..ra {
                for k in 0..rb {
                    for l in 0..rb {
                        out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                    }
                }
            }
        }
        out
    }

    fn mat2_dense(m: Mat2) -> Vec<Vec<Complex64>> {
        m.0.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn dense_string_matches_kronecker_product() {
        let s = PauliString::new(
            vec![Pauli::Y, Pauli::X, Pauli::Z],
            Complex64::new(0.5, -0.25),
        );
        let mut expected = mat2_dense(Pauli::Y.matrix());
        for p in [Pauli::X, Pauli::Z] {
            expected = kron(&expected, &mat2_dense(p.matrix()));
        }
        let got = s.to_dense();
        for r in 0..8 {
            for c in 0..8 {
                assert!((got[r][c] - expected[r][c] * s.coefficient).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn complex_weight_is_rejected() {
        let t = PauliString::new(vec![Pauli::X], Complex64::new(1.0, 0.5));
        assert!(matches!(Observable::new(1, vec![t]), Err(Error::NonHermitian(_))));
    }

    #[test]
    fn mixed_lengths_are_rejected() {
        let t = PauliString::real(vec![Pauli::X, Pauli::Z], 1.0);
        assert!(Observable::new(3, vec![t]).is_err());
    }

    #[test]
    fn simplify_merges_duplicates() {
        let obs = Observable::new(
            2,
            vec![
                PauliString::parse("XZ", 0.5).unwrap(),
                PauliString::parse("XZ", 0.25).unwrap(),
                PauliString::parse("YY", 1e-15).unwrap(),
            ],
        )
        .unwrap()
        .simplified(1e-12);
        assert_eq!(obs.terms().len(), 1);
        assert!((obs.coefficient_of("XZ") - 0.75).abs() < 1e-15);
    }

    #[test]
    fn diagonal_of_z_strings() {
        let obs = Observable::new(2, vec![PauliString::parse("ZI", 1.0).unwrap()]).unwrap();
        assert_eq!(obs.diagonal().unwrap(), vec![1.0, 1.0, -1.0, -1.0]);
        let x = Observable::new(1, vec![PauliString::parse("X", 1.0).unwrap()]).unwrap();
        assert!(x.diagonal().is_none());
    }
}
