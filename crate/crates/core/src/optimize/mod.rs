//! Searches over symmetric strategy profiles, fulcrum location and sweeps.

pub mod simplex;

use std::f64::consts::{FRAC_PI_4, PI};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::game::{expected_payoff, PayoffSpec, SymmetricProfile};
use crate::quantum::StateVector;
use simplex::SimplexOptions;

/// Grid points per parameter in the strategy search.
pub const STRATEGY_GRID: usize = 64;
/// Grid points handed to the simplex refinement.
pub const STRATEGY_SEEDS: usize = 5;
/// Width of the final bisection bracket.
pub const FULCRUM_TOL: f64 = 1e-13;
/// Payoff gap under which two profiles count as equally good.
pub const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult {
    /// `[theta, beta]` of the symmetric profile.
    pub best_parameters: Vec<f64>,
    pub best_value: f64,
    pub evaluations: usize,
}

impl OptimizationResult {
    pub fn profile(&self) -> SymmetricProfile {
        SymmetricProfile::new(self.best_parameters[0], self.best_parameters[1])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FulcrumResult {
    pub alpha_star: f64,
    pub payoff_at_fulcrum: f64,
    pub strategy_below: SymmetricProfile,
    pub strategy_above: SymmetricProfile,
}

/// Maps any real theta onto [0, pi] by reflection.
fn fold_theta(theta: f64) -> f64 {
    let t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        2.0 * PI - t
    } else {
        t
    }
}

/// Wraps beta into [-pi, pi).
fn wrap_beta(beta: f64) -> f64 {
    (beta + PI).rem_euclid(2.0 * PI) - PI
}

/// Orders tied maximizers: smaller theta, then smaller |beta|, then beta >= 0.
fn precedes(a: (f64, f64), b: (f64, f64)) -> bool {
    const EPS: f64 = 1e-9;
    if (a.0 - b.0).abs() > EPS {
        return a.0 < b.0;
    }
    if (a.1.abs() - b.1.abs()).abs() > EPS {
        return a.1.abs() < b.1.abs();
    }
    a.1 >= 0.0 && b.1 < 0.0
}

/// Maximizes the expected payoff over `(theta, beta)` in `[0, pi] x [-pi, pi]`.
///
/// A 64 x 64 grid picks five seeds, each refined by Nelder-Mead. Among
/// maximizers tied within 1e-12 (including the images under
/// `theta -> pi - theta`, `beta -> -beta` and quarter-period shifts of beta
/// whose payoff matches) the smallest `(theta, |beta|)` is reported.
pub fn optimize_symmetric_strategy(
    state: &StateVector,
    spec: &PayoffSpec,
) -> Result<OptimizationResult> {
    if state.n_qubits() != spec.n_qubits() {
        return Err(Error::DimensionMismatch {
            left: state.n_qubits(),
            right: spec.n_qubits(),
        });
    }
    let payoff = |theta: f64, beta: f64| {
        expected_payoff(state, &SymmetricProfile::new(theta, beta), spec)
            .expect("sizes checked above")
    };
    let mut evaluations = 0usize;

    let step = |i: usize| i as f64 / (STRATEGY_GRID - 1) as f64;
    let mut grid = Vec::with_capacity(STRATEGY_GRID * STRATEGY_GRID);
    for i in 0..STRATEGY_GRID {
        for j in 0..STRATEGY_GRID {
            let (theta, beta) = (PI * step(i), -PI + 2.0 * PI * step(j));
            grid.push((payoff(theta, beta), theta, beta));
        }
    }
    evaluations += grid.len();
    grid.sort_by(|a, b| b.0.total_cmp(&a.0));

    let opts = SimplexOptions {
        initial_step: PI / (STRATEGY_GRID - 1) as f64,
        ..SimplexOptions::default()
    };
    let mut refined: Vec<(f64, f64, f64)> = Vec::new();
    for &(_, theta, beta) in grid.iter().take(STRATEGY_SEEDS) {
        let r = simplex::minimize(
            |x| -payoff(fold_theta(x[0]), wrap_beta(x[1])),
            &[theta, beta],
            &opts,
        );
        evaluations += r.evaluations;
        let (t, b) = (fold_theta(r.point[0]), wrap_beta(r.point[1]));
        refined.push((payoff(t, b), t, b));
        evaluations += 1;
    }

    let top = refined.iter().map(|r| r.0).fold(f64::NEG_INFINITY, f64::max);
    let mut best: Option<(f64, f64)> = None;
    for &(value, theta, beta) in &refined {
        if value < top - TIE_TOL {
            continue;
        }
        let mut images = vec![(theta, beta), (theta, 0.0), (PI - theta, 0.0)];
        for t in [theta, PI - theta] {
            for s in [1.0, -1.0] {
                for k in -8..=8 {
                    images.push((t, wrap_beta(s * beta + k as f64 * FRAC_PI_4)));
                }
            }
        }
        for (t, b) in images {
            let v = payoff(t, b);
            evaluations += 1;
            if v >= top - TIE_TOL && best.is_none_or(|cur| precedes((t, b), cur)) {
                best = Some((t, b));
            }
        }
    }
    let (theta, beta) = best.expect("the top candidate is its own image");
    Ok(OptimizationResult {
        best_parameters: vec![theta, beta],
        best_value: payoff(theta, beta),
        evaluations: evaluations + 1,
    })
}

/// Locates the alpha where `high` overtakes `low` by bisection on
/// `g(alpha) = payoff(high) - payoff(low)` over [0, 1].
pub fn find_fulcrum<F>(
    family: F,
    spec: &PayoffSpec,
    low: SymmetricProfile,
    high: SymmetricProfile,
) -> Result<FulcrumResult>
where
    F: Fn(f64) -> Result<StateVector>,
{
    find_fulcrum_with_tol(family, spec, low, high, FULCRUM_TOL)
}

pub fn find_fulcrum_with_tol<F>(
    family: F,
    spec: &PayoffSpec,
    low: SymmetricProfile,
    high: SymmetricProfile,
    tol: f64,
) -> Result<FulcrumResult>
where
    F: Fn(f64) -> Result<StateVector>,
{
    let g = |alpha: f64| -> Result<f64> {
        let state = family(alpha)?;
        Ok(expected_payoff(&state, &high, spec)? - expected_payoff(&state, &low, spec)?)
    };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let (g0, g1) = (g(lo)?, g(hi)?);
    if g0 * g1 > 0.0 || (g0 == 0.0 && g1 == 0.0) {
        return Err(Error::NoSignChange { g0, g1 });
    }
    let rising = g1 > g0;
    while hi - lo >= tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let gm = g(mid)?;
        if (gm < 0.0) == rising {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let alpha_star = 0.5 * (lo + hi);
    let state = family(alpha_star)?;
    Ok(FulcrumResult {
        alpha_star,
        payoff_at_fulcrum: expected_payoff(&state, &high, spec)?,
        strategy_below: if rising { low } else { high },
        strategy_above: if rising { high } else { low },
    })
}

/// `steps` uniformly spaced values covering [0, 1] inclusive.
pub fn alpha_grid(steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::InvalidGrid(format!("need at least 2 steps, got {steps}")));
    }
    Ok((0..steps)
        .map(|i| i as f64 / (steps - 1) as f64)
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub alpha: f64,
    /// One payoff per profile, in input order.
    pub payoffs: Vec<f64>,
    /// Pointwise maximum over the profiles.
    pub envelope: f64,
    /// Index of the profile attaining the envelope (first on ties).
    pub best: usize,
}

/// Payoff of each profile across `alphas`, evaluated in parallel and
/// returned in input order.
pub fn payoff_sweep<F>(
    family: F,
    spec: &PayoffSpec,
    profiles: &[SymmetricProfile],
    alphas: &[f64],
) -> Result<Vec<SweepRow>>
where
    F: Fn(f64) -> Result<StateVector> + Sync,
{
    if let Some(a) = alphas.iter().find(|a| !(0.0..=1.0).contains(*a)) {
        return Err(Error::AlphaOutOfRange(*a));
    }
    alphas
        .par_iter()
        .map(|&alpha| {
            let state = family(alpha)?;
            let payoffs = profiles
                .iter()
                .map(|p| expected_payoff(&state, p, spec))
                .collect::<Result<Vec<f64>>>()?;
            let (best, envelope) = payoffs.iter().enumerate().fold(
                (0, f64::NEG_INFINITY),
                |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc },
            );
            Ok(SweepRow {
                alpha,
                payoffs,
                envelope,
                best,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::closed_form_payoff;

    #[test]
    fn fold_and_wrap() {
        assert!((fold_theta(-0.3) - 0.3).abs() < 1e-15);
        assert!((fold_theta(PI + 0.2) - (PI - 0.2)).abs() < 1e-12);
        assert!((wrap_beta(PI + 0.5) - (-PI + 0.5)).abs() < 1e-12);
        assert!((wrap_beta(-0.25) + 0.25).abs() < 1e-15);
    }

    #[test]
    fn tie_order_prefers_small_theta_then_small_positive_beta() {
        assert!(precedes((0.5, 2.0), (0.6, 0.0)));
        assert!(precedes((0.5, 0.1), (0.5, -0.2)));
        assert!(precedes((0.5, 0.1), (0.5, -0.1)));
        assert!(!precedes((0.5, -0.1), (0.5, 0.1)));
    }

    #[test]
    fn ghz_optimum_is_quarter() {
        let spec = PayoffSpec::minority(4).unwrap();
        let r = optimize_symmetric_strategy(&StateVector::psi_in(1.0).unwrap(), &spec).unwrap();
        assert!((r.best_value - 0.25).abs() < 1e-10);
        assert!((r.best_parameters[0] - PI / 2.0).abs() < 1e-6);
        assert!((r.best_parameters[1] - PI / 8.0).abs() < 1e-6);
    }

    #[test]
    fn epr_optimum_is_eighth() {
        let spec = PayoffSpec::minority(4).unwrap();
        let r = optimize_symmetric_strategy(&StateVector::psi_in(0.0).unwrap(), &spec).unwrap();
        assert!((r.best_value - 0.125).abs() < 1e-10);
        assert!((r.best_parameters[0] - PI / 4.0).abs() < 1e-6);
        assert_eq!(r.best_parameters[1], 0.0);
    }

    #[test]
    fn reported_value_matches_parameters() {
        let spec = PayoffSpec::minority(4).unwrap();
        let r = optimize_symmetric_strategy(&StateVector::psi_in(0.45).unwrap(), &spec).unwrap();
        let again = closed_form_payoff(0.45, r.best_parameters[0], r.best_parameters[1]);
        assert!((again - r.best_value).abs() < 1e-12);
    }

    #[test]
    fn fulcrum_without_sign_change_is_error() {
        let spec = PayoffSpec::minority(4).unwrap();
        let lo = SymmetricProfile::M_LOW;
        let err = find_fulcrum(StateVector::psi_in, &spec, lo, lo).unwrap_err();
        assert!(matches!(err, Error::NoSignChange { .. }));
        let zero = SymmetricProfile::new(0.0, 0.0);
        assert!(find_fulcrum(StateVector::psi_in, &spec, zero, lo).is_err());
    }

    #[test]
    fn alpha_grid_endpoints() {
        let g = alpha_grid(11).unwrap();
        assert_eq!(g.len(), 11);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[10], 1.0);
        assert!((g[3] - 0.3).abs() < 1e-15);
        assert!(alpha_grid(1).is_err());
    }

    #[test]
    fn sweep_endpoints_and_order() {
        let spec = PayoffSpec::minority(4).unwrap();
        let profiles = [SymmetricProfile::M_LOW, SymmetricProfile::M_HIGH];
        let alphas = alpha_grid(21).unwrap();
        let rows = payoff_sweep(StateVector::psi_in, &spec, &profiles, &alphas).unwrap();
        assert!(rows.iter().zip(&alphas).all(|(r, a)| r.alpha == *a));
        assert!((rows[0].envelope - 0.125).abs() < 1e-12);
        assert_eq!(rows[0].best, 0);
        assert!((rows[20].envelope - 0.25).abs() < 1e-12);
        assert_eq!(rows[20].best, 1);
        assert!(payoff_sweep(StateVector::psi_in, &spec, &profiles, &[1.5]).is_err());
    }
}
