//! Pure N-qubit states in the computational basis.
//!
//! Basis index `b` stores qubit 1 in the most significant bit, so the ket
//! `|j1 j2 j3 j4>` lives at `b = 8*j1 + 4*j2 + 2*j3 + j4`.

use num_complex::Complex64;

use super::mat2::Mat2;
use super::pauli::{Observable, HERMITIAN_TOL};
use crate::error::{Error, Result};

/// Qubit counts the state constructors support.
pub const SUPPORTED_QUBITS: &[usize] = &[4, 6];

/// Tolerance for unit norm and unitarity checks.
pub const NORM_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && (0.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::AlphaOutOfRange(alpha))
    }
}

fn check_supported(n: usize) -> Result<()> {
    if SUPPORTED_QUBITS.contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedQubitCount(n, SUPPORTED_QUBITS))
    }
}

fn norm_sqr(amps: &[Complex64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum()
}

fn normalize(mut amps: Vec<Complex64>) -> Vec<Complex64> {
    let norm = norm_sqr(&amps).sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    amps
}

/// All perfect matchings of `0..n` (n even), each as a list of pairs.
pub fn perfect_matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(rest: &[usize], acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let Some((&first, tail)) = rest.split_first() else {
            out.push(acc.clone());
            return;
        };
        for (i, &partner) in tail.iter().enumerate() {
            let remaining: Vec<usize> = tail
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &q)| q)
                .collect();
            acc.push((first, partner));
            rec(&remaining, acc, out);
            acc.pop();
        }
    }
    let qubits: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    rec(&qubits, &mut Vec::new(), &mut out);
    out
}

/// Product of EPR pairs `(|01> + |10>)/sqrt(2)` over the given qubit pairs.
pub fn epr_product(n: usize, pairs: &[(usize, usize)]) -> Vec<Complex64> {
    let amp = std::f64::consts::FRAC_1_SQRT_2.powi(pairs.len() as i32);
    let bit = |b: usize, q: usize| (b >> (n - 1 - q)) & 1;
    (0..1usize << n)
        .map(|b| {
            if pairs.iter().all(|&(p, q)| bit(b, p) != bit(b, q)) {
                Complex64::new(amp, 0.0)
            } else {
                ZERO
            }
        })
        .collect()
}

fn ghz_amplitudes(n: usize) -> Vec<Complex64> {
    let mut amps = vec![ZERO; 1 << n];
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amps[0] = h;
    amps[(1 << n) - 1] = h;
    amps
}

fn superpose(alpha: f64, ghz: &[Complex64], beta: f64, other: &[Complex64]) -> Vec<Complex64> {
    ghz.iter()
        .zip(other)
        .map(|(g, e)| g * alpha + e * beta)
        .collect()
}

/// Sum over all perfect matchings of EPR products, scaled to unit norm.
fn symmetric_epr_branch(n: usize) -> Vec<Complex64> {
    let mut sum = vec![ZERO; 1 << n];
    for m in perfect_matchings(n) {
        for (s, a) in sum.iter_mut().zip(epr_product(n, &m)) {
            *s += a;
        }
    }
    normalize(sum)
}

/// The three pairings AB.CD, AC.BD, AD.BC summed with the literal prefactor
/// `sqrt((1 - alpha^2)/3)` and no renormalization. Squared norm is `2 - alpha^2`.
pub fn phi_in_raw(alpha: f64) -> Result<Vec<Complex64>> {
    check_alpha(alpha)?;
    let mut pairs_sum = vec![ZERO; 16];
    for m in perfect_matchings(4) {
        for (s, a) in pairs_sum.iter_mut().zip(epr_product(4, &m)) {
            *s += a;
        }
    }
    Ok(superpose(
        alpha,
        &ghz_amplitudes(4),
        ((1.0 - alpha * alpha) / 3.0).sqrt(),
        &pairs_sum,
    ))
}

impl StateVector {
    /// Wraps amplitudes after checking the length and unit norm.
    pub fn from_amplitudes(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let expected = 1usize << n_qubits;
        if amplitudes.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: amplitudes.len(),
            });
        }
        let n2 = norm_sqr(&amplitudes);
        if (n2 - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized(n2));
        }
        Ok(StateVector {
            n_qubits,
            amplitudes,
        })
    }

    /// Computational basis state `|index>`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::LengthMismatch {
                expected: dim,
                found: index + 1,
            });
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector {
            n_qubits,
            amplitudes: amps,
        })
    }

    pub fn ghz(n: usize) -> Result<Self> {
        check_supported(n)?;
        Ok(StateVector {
            n_qubits: n,
            amplitudes: ghz_amplitudes(n),
        })
    }

    /// `alpha |GHZ> + sqrt(1 - alpha^2) |EPR>_AB |EPR>_CD`.
    pub fn psi_in(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        let epr = epr_product(4, &[(0, 1), (2, 3)]);
        let amps = superpose(alpha, &ghz_amplitudes(4), (1.0 - alpha * alpha).sqrt(), &epr);
        Ok(StateVector {
            n_qubits: 4,
            amplitudes: normalize(amps),
        })
    }

    /// Permutation-symmetric four-qubit state: [`phi_in_raw`] renormalized.
    pub fn phi_in(alpha: f64) -> Result<Self> {
        Ok(StateVector {
            n_qubits: 4,
            amplitudes: normalize(phi_in_raw(alpha)?),
        })
    }

    /// Permutation-symmetric four-qubit state whose EPR branch (the normalized
    /// sum of the three pairings) carries weight exactly `1 - alpha^2`.
    pub fn phi_in_balanced(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Self::ghz_plus_matchings(4, alpha)
    }

    /// Six-qubit analogue: GHZ_6 plus the normalized sum over all 15 perfect
    /// matchings, with branch weights `alpha^2` and `1 - alpha^2`.
    pub fn six_in(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Self::ghz_plus_matchings(6, alpha)
    }

    fn ghz_plus_matchings(n: usize, alpha: f64) -> Result<Self> {
        let branch = symmetric_epr_branch(n);
        let amps = superpose(alpha, &ghz_amplitudes(n), (1.0 - alpha * alpha).sqrt(), &branch);
        Ok(StateVector {
            n_qubits: n,
            amplitudes: normalize(amps),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        self.same_size(other.n_qubits)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    fn same_size(&self, n: usize) -> Result<()> {
        if self.n_qubits == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.n_qubits,
                right: n,
            })
        }
    }

    /// `(U_1 x ... x U_n) |self>`, applied one qubit at a time.
    pub fn apply_local(&self, unitaries: &[Mat2]) -> Result<StateVector> {
        if unitaries.len() != self.n_qubits {
            return Err(Error::LengthMismatch {
                expected: self.n_qubits,
                found: unitaries.len(),
            });
        }
        for (qubit, u) in unitaries.iter().enumerate() {
            let deviation = u.unitarity_defect();
            if deviation.is_nan() || deviation >= NORM_TOL {
                return Err(Error::NotUnitary { qubit, deviation });
            }
        }
        Ok(self.apply_local_unchecked(unitaries))
    }

    /// Same as [`apply_local`](Self::apply_local) for any 2x2 operators; no
    /// checks, and the result need not be normalized.
    pub(crate) fn apply_local_unchecked(&self, ops: &[Mat2]) -> StateVector {
        let mut amps = self.amplitudes.clone();
        for (q, op) in ops.iter().enumerate() {
            apply_single(&mut amps, self.n_qubits, q, op);
        }
        StateVector {
            n_qubits: self.n_qubits,
            amplitudes: amps,
        }
    }

    /// `<self| obs |self>`; errors when the imaginary residue exceeds 1e-10.
    pub fn expectation(&self, obs: &Observable) -> Result<f64> {
        self.same_size(obs.n_qubits())?;
        let mut total = Complex64::new(0.0, 0.0);
        for t in obs.terms() {
            total += t.expectation(self)?;
        }
        if total.im.abs() > HERMITIAN_TOL {
            return Err(Error::NonHermitian(total.im));
        }
        Ok(total.re)
    }

    /// Exchanges qubits `i` and `j` (0-based).
    pub fn swap_qubits(&self, i: usize, j: usize) -> StateVector {
        let n = self.n_qubits;
        let (bi, bj) = (n - 1 - i, n - 1 - j);
        let amps = (0..self.dim())
            .map(|b| {
                let (x, y) = ((b >> bi) & 1, (b >> bj) & 1);
                let src = if x == y {
                    b
                } else {
                    b ^ (1 << bi) ^ (1 << bj)
                };
                self.amplitudes[src]
            })
            .collect();
        StateVector {
            n_qubits: n,
            amplitudes: amps,
        }
    }
}

/// Applies `op` to qubit `q` (0-based, qubit 0 is the most significant bit).
pub(crate) fn apply_single(amps: &mut [Complex64], n: usize, q: usize, op: &Mat2) {
    let stride = 1usize << (n - 1 - q);
    let [[a, b], [c, d]] = op.0;
    for base in 0..amps.len() {
        if base & stride != 0 {
            continue;
        }
        let lo = amps[base];
        let hi = amps[base | stride];
        amps[base] = a * lo + b * hi;
        amps[base | stride] = c * lo + d * hi;
    }
}
