use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

use mbell_core::bell::{
    evaluate, lhv_bound, mabk_polynomial, maximize_violation, payoff_polynomial, werner_angles,
    werner_scheme, BellPolynomial, MeasurementScheme, Plane,
};
use mbell_core::game::{expected_payoff, reference_profiles, PayoffSpec, SymmetricProfile};
use mbell_core::optimize::{alpha_grid, find_fulcrum, optimize_symmetric_strategy, payoff_sweep};
use mbell_core::quantum::{StateFamily, StateVector};
use mbell_core::uniqueness::{
    build_constraints, classify_game, is_odd_weight, parity_parameters, parity_span_residual,
    solve_family, solve_family_zero_sum, Axis, EliminationChoice, OUTCOMES,
};
use mbell_core::Error;
use rayon::prelude::*;

use crate::error::CliError;
use crate::format::sig10;

pub const CSV_HEADER: [&str; 8] = [
    "alpha",
    "payoff_low_strategy",
    "payoff_high_strategy",
    "payoff_envelope",
    "chi_payoff_opt",
    "chi_mabk_max",
    "delta_chi",
    "fulcrum_flag",
];

/// Payoff gap under which an optimum counts as belonging to a profile class.
pub const CLASS_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub enum PolynomialKind {
    Mabk,
    Payoff,
}

impl PolynomialKind {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "mabk" => Ok(PolynomialKind::Mabk),
            "payoff" => Ok(PolynomialKind::Payoff),
            other => Err(CliError::Invalid(format!(
                "unknown polynomial '{other}' (expected mabk or payoff)"
            ))),
        }
    }
}

pub fn parse_family(s: &str) -> Result<StateFamily, CliError> {
    s.parse().map_err(CliError::Invalid)
}

pub fn parse_plane(s: &str) -> Result<Plane, CliError> {
    Plane::parse(s.trim())
        .ok_or_else(|| CliError::Invalid(format!("unknown plane '{s}' (expected xy, zy or xz)")))
}

pub fn parse_axis(s: &str) -> Result<Axis, CliError> {
    Axis::parse(s).ok_or_else(|| CliError::Invalid(format!("unknown axis '{s}' (expected z, x or y)")))
}

fn family_fn(family: StateFamily) -> impl Fn(f64) -> mbell_core::Result<StateVector> + Sync {
    move |alpha| family.state(alpha)
}

/// Largest symmetric single-plane violation over every plane.
fn max_violation(poly: &BellPolynomial, state: &StateVector) -> mbell_core::Result<f64> {
    let mut best = f64::NEG_INFINITY;
    for plane in Plane::ALL {
        best = best.max(maximize_violation(poly, state, plane, true)?.1);
    }
    Ok(best)
}

/// Writes the sweep table to `out` and returns a short report.
pub fn sweep(family: StateFamily, steps: usize, out: &Path) -> Result<String, CliError> {
    let n = family.n_qubits();
    let spec = PayoffSpec::minority(n)?;
    let (low, high) = reference_profiles(n)?;
    let alphas = alpha_grid(steps)?;
    let rows = payoff_sweep(family_fn(family), &spec, &[low, high], &alphas)?;
    let fulcrum = match find_fulcrum(family_fn(family), &spec, low, high) {
        Ok(f) => Some(f),
        Err(Error::NoSignChange { .. }) => None,
        Err(e) => return Err(e.into()),
    };

    let mabk = mabk_polynomial(n)?;
    let lhv = lhv_bound(&mabk);
    let payoff_poly = (n == 4).then(payoff_polynomial);
    // 32 for four players; the same 2^(n+1) scale for six
    let scale = (1u64 << (n + 1)) as f64;
    let xy = MeasurementScheme::symmetric(n, Plane::Xy, 0.0, PI / 2.0);
    let zy = MeasurementScheme::symmetric(n, Plane::Zy, 0.0, PI / 2.0);

    let extra = rows
        .par_iter()
        .map(|row| -> mbell_core::Result<(f64, f64)> {
            let state = family.state(row.alpha)?;
            let chi_payoff = match &payoff_poly {
                Some(poly) => evaluate(poly, &state, if row.best == 1 { &xy } else { &zy })?,
                None => scale * row.envelope,
            };
            Ok((chi_payoff, max_violation(&mabk, &state)?))
        })
        .collect::<mbell_core::Result<Vec<_>>>()?;

    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(CSV_HEADER)?;
    for (row, (chi_payoff, chi_mabk)) in rows.iter().zip(&extra) {
        let flag = fulcrum.as_ref().map_or(0, |f| u8::from(row.alpha >= f.alpha_star));
        writer.write_record([
            sig10(row.alpha),
            sig10(row.payoffs[0]),
            sig10(row.payoffs[1]),
            sig10(row.envelope),
            sig10(*chi_payoff),
            sig10(*chi_mabk),
            sig10(chi_mabk / lhv),
            flag.to_string(),
        ])?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    std::fs::write(out, bytes).map_err(|e| CliError::Io {
        path: out.display().to_string(),
        source: e,
    })?;

    let mut report = format!("family {family} ({n} qubits), {steps} alpha values\n");
    match &fulcrum {
        Some(f) => writeln!(
            report,
            "fulcrum alpha* = {} (payoff {})",
            sig10(f.alpha_star),
            sig10(f.payoff_at_fulcrum)
        )
        .unwrap(),
        None => writeln!(report, "fulcrum alpha* = none (reference profiles never cross)").unwrap(),
    }
    writeln!(report, "wrote {} rows to {}", rows.len(), out.display()).unwrap();
    Ok(report)
}

fn wrap(beta: f64) -> f64 {
    (beta + PI).rem_euclid(2.0 * PI) - PI
}

/// Distance from `(theta, beta)` to the nearest payoff-preserving image of
/// `reference` on `state`.
fn class_distance(
    state: &StateVector,
    spec: &PayoffSpec,
    reference: SymmetricProfile,
    theta: f64,
    beta: f64,
) -> mbell_core::Result<f64> {
    let target = expected_payoff(state, &reference, spec)?;
    let mut best = f64::INFINITY;
    for t in [reference.theta, PI - reference.theta] {
        for s in [1.0, -1.0] {
            for k in -24..=24 {
                let b = wrap(s * reference.beta + k as f64 * PI / 12.0);
                let image = SymmetricProfile::new(t, b);
                if (expected_payoff(state, &image, spec)? - target).abs() > 1e-12 {
                    continue;
                }
                let d = ((theta - t).powi(2) + wrap(beta - b).powi(2)).sqrt();
                best = best.min(d);
            }
        }
    }
    Ok(best)
}

pub fn optimize(family: StateFamily, alpha: f64) -> Result<String, CliError> {
    let n = family.n_qubits();
    let state = family.state(alpha)?;
    let spec = PayoffSpec::minority(n)?;
    let r = optimize_symmetric_strategy(&state, &spec)?;
    let (theta, beta) = (r.best_parameters[0], r.best_parameters[1]);
    let (low, high) = reference_profiles(n)?;

    let mut report = format!("family {family}, alpha {}\n", sig10(alpha));
    writeln!(report, "optimal theta = {}", sig10(theta)).unwrap();
    writeln!(report, "optimal beta = {}", sig10(beta)).unwrap();
    writeln!(report, "payoff = {}", sig10(r.best_value)).unwrap();
    for (name, profile) in [("M<", low), ("M>", high)] {
        let gap = r.best_value - expected_payoff(&state, &profile, &spec)?;
        let distance = class_distance(&state, &spec, profile, theta, beta)?;
        writeln!(
            report,
            "class {name} (theta {}, beta {}): payoff gap {}, parameter distance {}, match {}",
            sig10(profile.theta),
            sig10(profile.beta),
            sig10(gap),
            sig10(distance),
            if gap.abs() < CLASS_TOL { "yes" } else { "no" }
        )
        .unwrap();
    }
    writeln!(report, "evaluations = {}", r.evaluations).unwrap();
    Ok(report)
}

pub fn bell(
    family: StateFamily,
    alpha: f64,
    plane: Plane,
    kind: PolynomialKind,
) -> Result<String, CliError> {
    let n = family.n_qubits();
    let state = family.state(alpha)?;
    let (poly, name) = match kind {
        PolynomialKind::Mabk => (mabk_polynomial(n)?, "mabk"),
        PolynomialKind::Payoff if n == 4 => (payoff_polynomial(), "payoff"),
        PolynomialKind::Payoff => {
            return Err(CliError::Invalid(format!(
                "the payoff polynomial is defined for four players, family {family} has {n}"
            )))
        }
    };
    let lhv = lhv_bound(&poly);
    let (w1, w2) = werner_angles(n)?;
    let werner = evaluate(&poly, &state, &werner_scheme(n, plane)?)?;
    let (scheme, best) = maximize_violation(&poly, &state, plane, true)?;
    let angles = scheme.angles();

    let mut report = format!(
        "family {family}, alpha {}, plane {plane}, polynomial {name}\n",
        sig10(alpha)
    );
    writeln!(report, "lhv bound = {}", sig10(lhv)).unwrap();
    writeln!(
        report,
        "werner scheme ({}, {}): chi = {}",
        sig10(w1),
        sig10(w2),
        sig10(werner)
    )
    .unwrap();
    writeln!(
        report,
        "maximized |chi| = {} at angles ({}, {})",
        sig10(best),
        sig10(angles[0]),
        sig10(angles[1])
    )
    .unwrap();
    writeln!(report, "delta chi = {}", sig10(best / lhv)).unwrap();
    Ok(report)
}

/// Representative strategy used to report each elimination axis.
pub fn representative(axis: Axis) -> EliminationChoice {
    let (theta, beta) = match axis {
        Axis::Z => (PI / 2.0, PI / 8.0),
        Axis::X => (PI / 4.0, 0.0),
        Axis::Y => (PI / 2.0, PI / 4.0),
    };
    EliminationChoice::new(axis, theta, beta).expect("representatives eliminate their axis")
}

fn parity_table(a: f64, b: f64) -> Vec<f64> {
    (0..OUTCOMES)
        .map(|i| if is_odd_weight(i) { a } else { b })
        .collect()
}

pub fn uniqueness(axes: &[Axis]) -> Result<String, CliError> {
    let mut report = String::new();
    for &axis in axes {
        let choice = representative(axis);
        let sys = build_constraints(&choice);
        let patterns = sys.without_sum_row();
        let family = solve_family(&sys);
        writeln!(
            report,
            "{axis}-elimination (theta {}, beta {})",
            sig10(choice.theta),
            sig10(choice.beta)
        )
        .unwrap();
        writeln!(
            report,
            "  pattern constraints: {} rows, rank {}",
            patterns.row_count(),
            patterns.rank()
        )
        .unwrap();
        writeln!(
            report,
            "  nullspace dimension {}, parity span residual {}",
            family.len(),
            sig10(parity_span_residual(&family))
        )
        .unwrap();
        writeln!(
            report,
            "  family: c = a on odd-weight outcomes, b on even-weight outcomes"
        )
        .unwrap();
        if sys.has_sum_row() {
            let line = solve_family_zero_sum(&sys);
            writeln!(
                report,
                "  with sum c = 0: {} rows, rank {}, nullspace dimension {}",
                sys.row_count(),
                sys.rank(),
                line.len()
            )
            .unwrap();
            for v in &line {
                let neg: Vec<f64> = v.iter().map(|x| -x).collect();
                for c in [v.as_slice(), neg.as_slice()] {
                    let (a, b) = parity_parameters(c, 1e-9).unwrap_or((f64::NAN, f64::NAN));
                    writeln!(
                        report,
                        "  (a, b) = ({}, {}): {}",
                        sig10(a),
                        sig10(b),
                        classify_game(c)
                    )
                    .unwrap();
                }
            }
        } else {
            for (a, b) in [(1.0, -1.0), (-1.0, 1.0), (1.0, 0.5), (-1.0, -0.5)] {
                writeln!(
                    report,
                    "  (a, b) = ({}, {}): {}",
                    sig10(a),
                    sig10(b),
                    classify_game(&parity_table(a, b))
                )
                .unwrap();
            }
        }
    }
    Ok(report)
}
