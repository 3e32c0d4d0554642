//! Strategies, Minority-game payoff rules and expected payoffs.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quantum::{Mat2, Observable, Pauli, StateVector, SUPPORTED_QUBITS};

const ANGLE_SLACK: f64 = 1e-12;

/// Local unitary `M(theta, beta1, beta2)` chosen by one player.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Strategy {
    pub theta: f64,
    pub beta1: f64,
    pub beta2: f64,
}

impl Strategy {
    /// Validated constructor: `theta` in [0, pi], phases in [-pi, pi].
    pub fn new(theta: f64, beta1: f64, beta2: f64) -> Result<Self> {
        let check = |name, value: f64, lo: f64, hi: f64, range| {
            if value.is_finite() && value >= lo - ANGLE_SLACK && value <= hi + ANGLE_SLACK {
                Ok(())
            } else {
                Err(Error::AngleOutOfRange { name, value, range })
            }
        };
        check("theta", theta, 0.0, PI, "[0, pi]")?;
        check("beta1", beta1, -PI, PI, "[-pi, pi]")?;
        check("beta2", beta2, -PI, PI, "[-pi, pi]")?;
        Ok(Strategy {
            theta,
            beta1,
            beta2,
        })
    }

    /// Any real angles. The matrix is unitary for every input; this is for
    /// parameter choices such as `theta = 3pi/2` outside the canonical box.
    pub fn unrestricted(theta: f64, beta1: f64, beta2: f64) -> Self {
        Strategy {
            theta,
            beta1,
            beta2,
        }
    }

    pub fn matrix(&self) -> Mat2 {
        strategy_matrix(self)
    }
}

/// Every player uses `M(theta, beta, -beta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricProfile {
    pub theta: f64,
    pub beta: f64,
}

impl SymmetricProfile {
    /// Optimal four-player profile below the fulcrum, `M(pi/4, 0, 0)`.
    pub const M_LOW: SymmetricProfile = SymmetricProfile {
        theta: FRAC_PI_4,
        beta: 0.0,
    };

    /// Optimal four-player profile above the fulcrum, `M(pi/2, pi/8, -pi/8)`.
    pub const M_HIGH: SymmetricProfile = SymmetricProfile {
        theta: FRAC_PI_2,
        beta: FRAC_PI_8,
    };

    /// Six-player GHZ-side profile, `M(pi/2, pi/12, -pi/12)`.
    pub const M_HIGH_SIX: SymmetricProfile = SymmetricProfile {
        theta: FRAC_PI_2,
        beta: PI / 12.0,
    };

    pub const fn new(theta: f64, beta: f64) -> Self {
        SymmetricProfile { theta, beta }
    }

    pub fn strategy(&self) -> Strategy {
        Strategy::unrestricted(self.theta, self.beta, -self.beta)
    }

    pub fn matrix(&self) -> Mat2 {
        self.strategy().matrix()
    }

    /// The `n` identical per-player strategies.
    pub fn expand(&self, n: usize) -> Vec<Strategy> {
        vec![self.strategy(); n]
    }
}

/// Reference (low-alpha, high-alpha) profiles for `n` players.
pub fn reference_profiles(n: usize) -> Result<(SymmetricProfile, SymmetricProfile)> {
    match n {
        4 => Ok((SymmetricProfile::M_LOW, SymmetricProfile::M_HIGH)),
        6 => Ok((SymmetricProfile::M_LOW, SymmetricProfile::M_HIGH_SIX)),
        _ => Err(Error::UnsupportedQubitCount(n, SUPPORTED_QUBITS)),
    }
}

/// Per-outcome payoff table; index `b` follows the state's basis convention.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffSpec {
    n_qubits: usize,
    coefficients: Vec<f64>,
}

fn check_players(n: usize) -> Result<()> {
    if SUPPORTED_QUBITS.contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedQubitCount(n, SUPPORTED_QUBITS))
    }
}

/// Size of the strict minority for an outcome, or `None` on a tie / unanimity.
pub fn strict_minority_size(outcome: usize, n: usize) -> Option<usize> {
    let ones = outcome.count_ones() as usize;
    let m = ones.min(n - ones);
    (m > 0 && 2 * m < n).then_some(m)
}

impl PayoffSpec {
    pub fn from_coefficients(n_qubits: usize, coefficients: Vec<f64>) -> Result<Self> {
        let expected = 1usize << n_qubits;
        if coefficients.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: coefficients.len(),
            });
        }
        Ok(PayoffSpec {
            n_qubits,
            coefficients,
        })
    }

    pub fn zero(n_qubits: usize) -> Self {
        PayoffSpec {
            n_qubits,
            coefficients: vec![0.0; 1 << n_qubits],
        }
    }

    /// Player-averaged Minority payoff: each of the `m` strict-minority
    /// players earns one unit, so the per-player average is `m / n`.
    pub fn minority(n: usize) -> Result<Self> {
        check_players(n)?;
        let coefficients = (0..1usize << n)
            .map(|b| strict_minority_size(b, n).map_or(0.0, |m| m as f64 / n as f64))
            .collect();
        Ok(PayoffSpec {
            n_qubits: n,
            coefficients,
        })
    }

    /// `1/n` on every outcome with no strict minority.
    pub fn anti_minority(n: usize) -> Result<Self> {
        check_players(n)?;
        let coefficients = (0..1usize << n)
            .map(|b| match strict_minority_size(b, n) {
                Some(_) => 0.0,
                None => 1.0 / n as f64,
            })
            .collect();
        Ok(PayoffSpec {
            n_qubits: n,
            coefficients,
        })
    }

    /// Payoff to one player (0-based): one unit when in the strict minority.
    pub fn single_player(n: usize, player: usize) -> Result<Self> {
        check_players(n)?;
        if player >= n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: player + 1,
            });
        }
        let coefficients = (0..1usize << n)
            .map(|b| {
                let choice = (b >> (n - 1 - player)) & 1;
                let ones = b.count_ones() as usize;
                let same = if choice == 1 { ones } else { n - ones };
                if strict_minority_size(b, n).is_some() && 2 * same < n {
                    1.0
                } else {
                    0.0
                }
            })
            .collect();
        Ok(PayoffSpec {
            n_qubits: n,
            coefficients,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn coefficient(&self, outcome: usize) -> f64 {
        self.coefficients[outcome]
    }

    pub fn max_coefficient(&self) -> f64 {
        self.coefficients.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }
}

pub fn strategy_matrix(s: &Strategy) -> Mat2 {
    let (c, sn) = ((s.theta / 2.0).cos(), (s.theta / 2.0).sin());
    let e = |phi: f64| Complex64::from_polar(1.0, phi);
    let i = Complex64::i();
    Mat2::new(
        e(s.beta1) * c,
        i * e(s.beta2) * sn,
        i * e(-s.beta2) * sn,
        e(-s.beta1) * c,
    )
}

/// Diagonal payoff operator written over {I, Z} strings (Walsh-Hadamard transform).
pub fn payoff_observable(spec: &PayoffSpec) -> Observable {
    let n = spec.n_qubits;
    let dim = 1usize << n;
    let mut weights = BTreeMap::new();
    for mask in 0..dim {
        let w: f64 = spec
            .coefficients
            .iter()
            .enumerate()
            .map(|(b, c)| {
                if (b & mask).count_ones() % 2 == 0 {
                    *c
                } else {
                    -*c
                }
            })
            .sum::<f64>()
            / dim as f64;
        let letters = (0..n)
            .map(|q| {
                if mask >> (n - 1 - q) & 1 == 1 {
                    Pauli::Z
                } else {
                    Pauli::I
                }
            })
            .collect::<Vec<_>>();
        weights.insert(letters, w);
    }
    Observable::from_weights(n, weights, 1e-15)
}

fn check_sizes(state: &StateVector, spec: &PayoffSpec) -> Result<()> {
    if state.n_qubits() != spec.n_qubits {
        return Err(Error::DimensionMismatch {
            left: state.n_qubits(),
            right: spec.n_qubits,
        });
    }
    Ok(())
}

/// Expected payoff when every player applies `strategy`.
pub fn expected_payoff_with(
    state: &StateVector,
    strategy: &Strategy,
    spec: &PayoffSpec,
) -> Result<f64> {
    check_sizes(state, spec)?;
    let ops = vec![strategy.matrix(); state.n_qubits()];
    let fin = state.apply_local(&ops)?;
    Ok(fin
        .amplitudes()
        .iter()
        .zip(&spec.coefficients)
        .map(|(a, c)| a.norm_sqr() * c)
        .sum())
}

pub fn expected_payoff(
    state: &StateVector,
    profile: &SymmetricProfile,
    spec: &PayoffSpec,
) -> Result<f64> {
    expected_payoff_with(state, &profile.strategy(), spec)
}

/// Analytic payoff for the four-player Minority game on `psi_in(alpha)`.
pub fn closed_form_payoff(alpha: f64, theta: f64, beta: f64) -> f64 {
    let a2 = alpha * alpha;
    let mix = 8.0 * alpha * (2.0 - 2.0 * a2).max(0.0).sqrt();
    let c2t = (2.0 * theta).cos();
    let c4b = (4.0 * beta).cos();
    let c8b = (8.0 * beta).cos();
    theta.sin().powi(2) / 32.0
        * (8.0 - 2.0 * a2 + mix * c4b - 2.0 * a2 * c8b
            + 2.0 * (4.0 - 3.0 * a2) * c2t
            + mix * c4b * c2t
            + 2.0 * a2 * c8b * c2t)
}

/// `M^dagger P_j M` for `M = M(theta, beta, -beta)`, in closed form:
/// `I/2 + (-1)^j [ (cos^2(theta/2) - 1/2) Z + sin(theta)/2 (sin(2beta) X - cos(2beta) Y) ]`.
pub fn projector_transform(theta: f64, beta: f64, j: u8) -> Mat2 {
    let [ci, cx, cy, cz] = projector_coordinates(theta, beta, j);
    let r = |v: f64| Complex64::new(v, 0.0);
    Mat2::from_pauli_coordinates([r(ci), r(cx), r(cy), r(cz)])
}

/// (I, X, Y, Z) coordinates of [`projector_transform`].
pub fn projector_coordinates(theta: f64, beta: f64, j: u8) -> [f64; 4] {
    let sign = if j == 0 { 1.0 } else { -1.0 };
    let half_sin = 0.5 * theta.sin();
    [
        0.5,
        sign * half_sin * (2.0 * beta).sin(),
        -sign * half_sin * (2.0 * beta).cos(),
        sign * ((theta / 2.0).cos().powi(2) - 0.5),
    ]
}

/// Conjugates the payoff operator by `strategy` on every qubit and returns
/// the result as a real Pauli sum.
pub fn transformed_payoff_observable(strategy: &Strategy, spec: &PayoffSpec) -> Observable {
    let m = strategy.matrix();
    let coords: [[f64; 4]; 2] = [0u8, 1].map(|j| {
        (m.adjoint() * Mat2::projector(j) * m)
            .pauli_coordinates()
            .map(|c| c.re)
    });
    transformed_from_coordinates(&coords, spec)
}

/// Expands `sum_b c_b (x)_k T_{b_k}` given the Pauli coordinates of `T_0, T_1`.
pub(crate) fn transformed_from_coordinates(coords: &[[f64; 4]; 2], spec: &PayoffSpec) -> Observable {
    let n = spec.n_qubits;
    let mut weights = BTreeMap::new();
    for code in 0..1usize << (2 * n) {
        let letters: Vec<Pauli> = (0..n)
            .map(|q| Pauli::ALL[(code >> (2 * (n - 1 - q))) & 3])
            .collect();
        let w: f64 = spec
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(b, c)| {
                letters.iter().enumerate().fold(*c, |acc, (q, p)| {
                    acc * coords[(b >> (n - 1 - q)) & 1][p.index()]
                })
            })
            .sum();
        weights.insert(letters, w);
    }
    Observable::from_weights(n, weights, 1e-14)
}
