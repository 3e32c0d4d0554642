//! Which four-player payoff tables stay free of mixed identity patterns once
//! the common strategy has one Pauli axis eliminated.
//!
//! Each player's transformed projector `M^dag P_j M` is written in Pauli
//! coordinates. Expanding the transformed payoff operator, the weight on a
//! Pauli string `sigma` is linear in the payoff table `c`. Strings with one
//! to three identity factors must vanish; every such string gives one row.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::game::{projector_coordinates, Strategy};
use crate::quantum::Pauli;

/// Players in the uniqueness analysis.
pub const PLAYERS: usize = 4;
/// Number of outcomes (columns of the constraint matrix).
pub const OUTCOMES: usize = 1 << PLAYERS;
/// Relative singular-value cutoff for rank and nullspace.
pub const RANK_TOL: f64 = 1e-10;
/// Largest admissible value of the eliminated coordinate.
pub const ELIMINATION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::Z, Axis::X, Axis::Y];

    pub fn pauli(self) -> Pauli {
        match self {
            Axis::X => Pauli::X,
            Axis::Y => Pauli::Y,
            Axis::Z => Pauli::Z,
        }
    }

    pub fn parse(s: &str) -> Option<Axis> {
        match s.trim().to_ascii_lowercase().as_str() {
            "x" => Some(Axis::X),
            "y" => Some(Axis::Y),
            "z" => Some(Axis::Z),
            _ => None,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Axis::X => 'X',
            Axis::Y => 'Y',
            Axis::Z => 'Z',
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A strategy `(theta, beta, -beta)` whose transformed projectors carry no
/// component along `eliminated_axis`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EliminationChoice {
    pub eliminated_axis: Axis,
    pub theta: f64,
    pub beta: f64,
}

impl EliminationChoice {
    /// Checks numerically that the eliminated coordinate vanishes.
    pub fn new(eliminated_axis: Axis, theta: f64, beta: f64) -> Result<Self> {
        let coords = projector_coordinates(theta, beta, 0);
        let residual = coords[eliminated_axis.pauli().index()].abs();
        if residual.is_nan() || residual > ELIMINATION_TOL {
            return Err(Error::InvalidElimination {
                axis: eliminated_axis.symbol(),
                theta,
                beta,
                residual,
            });
        }
        Ok(EliminationChoice {
            eliminated_axis,
            theta,
            beta,
        })
    }

    pub fn strategy(&self) -> Strategy {
        Strategy::unrestricted(self.theta, self.beta, -self.beta)
    }

    /// Pauli coordinates `[I, X, Y, Z]` of `M^dag P_j M` with the
    /// eliminated entry set to exactly zero.
    pub fn coordinates(&self, j: u8) -> [f64; 4] {
        let mut c = projector_coordinates(self.theta, self.beta, j);
        c[self.eliminated_axis.pauli().index()] = 0.0;
        c
    }
}

/// Representative admissible eliminations for each axis.
///
/// Z needs `theta` in {pi/2, 3pi/2} with any `beta`; X needs `beta` in
/// {0, pi/2, pi, 3pi/2} with any `theta`; Y needs `beta` in
/// {pi/4, 3pi/4, 5pi/4, 7pi/4} with any `theta`. The free parameter is
/// sampled at a few generic values.
pub fn admissible_eliminations() -> Vec<EliminationChoice> {
    let free = [0.37, 1.0, 2.2];
    let mut out = Vec::new();
    for theta in [FRAC_PI_2, 3.0 * FRAC_PI_2] {
        for beta in [0.0, PI / 8.0, FRAC_PI_4, -0.9, 2.5] {
            out.push(EliminationChoice::new(Axis::Z, theta, beta).expect("admissible"));
        }
    }
    for beta in [0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2] {
        for theta in free.iter().chain(&[FRAC_PI_2]) {
            out.push(EliminationChoice::new(Axis::X, *theta, beta).expect("admissible"));
        }
    }
    for beta in [FRAC_PI_4, 3.0 * FRAC_PI_4, 5.0 * FRAC_PI_4, 7.0 * FRAC_PI_4] {
        for theta in free.iter().chain(&[FRAC_PI_2]) {
            out.push(EliminationChoice::new(Axis::Y, *theta, beta).expect("admissible"));
        }
    }
    out
}

/// Where a constraint row came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowLabel {
    /// Coefficient of this Pauli string must vanish.
    Pattern(Vec<Pauli>),
    /// The table must sum to zero.
    SumZero,
    /// Any additional condition supplied by the caller.
    Extra(String),
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowLabel::Pattern(p) => {
                for l in p {
                    write!(f, "{}", l.symbol())?;
                }
                Ok(())
            }
            RowLabel::SumZero => f.write_str("sum"),
            RowLabel::Extra(name) => f.write_str(name),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintRow {
    pub label: RowLabel,
    pub coefficients: Vec<f64>,
}

/// Linear constraints on the 16-entry payoff table.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintSystem {
    pub choice: Option<EliminationChoice>,
    rows: Vec<ConstraintRow>,
}

impl ConstraintSystem {
    pub fn from_rows(rows: Vec<ConstraintRow>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.coefficients.len() != OUTCOMES) {
            return Err(Error::LengthMismatch {
                expected: OUTCOMES,
                found: r.coefficients.len(),
            });
        }
        Ok(ConstraintSystem { choice: None, rows })
    }

    pub fn rows(&self) -> &[ConstraintRow] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn has_sum_row(&self) -> bool {
        self.rows.iter().any(|r| r.label == RowLabel::SumZero)
    }

    /// The same system without the sum-to-zero row.
    pub fn without_sum_row(&self) -> ConstraintSystem {
        ConstraintSystem {
            choice: self.choice,
            rows: self
                .rows
                .iter()
                .filter(|r| r.label != RowLabel::SumZero)
                .cloned()
                .collect(),
        }
    }

    /// Returns a copy with one more row appended.
    pub fn with_row(&self, label: RowLabel, coefficients: Vec<f64>) -> Result<ConstraintSystem> {
        let mut rows = self.rows.clone();
        rows.push(ConstraintRow {
            label,
            coefficients,
        });
        let mut sys = ConstraintSystem::from_rows(rows)?;
        sys.choice = self.choice;
        Ok(sys)
    }

    fn matrix(&self) -> DMatrix<f64> {
        // at least OUTCOMES rows so the thin SVD yields a full V
        let height = self.rows.len().max(OUTCOMES);
        let mut m = DMatrix::zeros(height, OUTCOMES);
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r.coefficients.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        let svd = self.matrix().svd(false, false);
        let top = svd.singular_values.max();
        if top == 0.0 {
            return 0;
        }
        svd.singular_values
            .iter()
            .filter(|s| **s > RANK_TOL * top)
            .count()
    }
}

/// Pauli strings on four qubits with one, two or three identity factors.
fn mixed_identity_patterns() -> Vec<Vec<Pauli>> {
    let mut out = Vec::new();
    for code in 0..4usize.pow(PLAYERS as u32) {
        let pattern: Vec<Pauli> = (0..PLAYERS)
            .map(|k| Pauli::ALL[(code >> (2 * (PLAYERS - 1 - k))) & 3])
            .collect();
        let ids = pattern.iter().filter(|p| **p == Pauli::I).count();
        if (1..PLAYERS).contains(&ids) {
            out.push(pattern);
        }
    }
    out
}

/// Rows for every mixed-identity Pauli pattern that survives the
/// elimination, plus the sum-to-zero row when X or Y is eliminated.
pub fn build_constraints(choice: &EliminationChoice) -> ConstraintSystem {
    let t = [choice.coordinates(0), choice.coordinates(1)];
    let mut rows = Vec::new();
    for pattern in mixed_identity_patterns() {
        let coefficients: Vec<f64> = (0..OUTCOMES)
            .map(|b| {
                pattern
                    .iter()
                    .enumerate()
                    .map(|(k, p)| t[(b >> (PLAYERS - 1 - k)) & 1][p.index()])
                    .product()
            })
            .collect();
        if coefficients.iter().any(|v| *v != 0.0) {
            rows.push(ConstraintRow {
                label: RowLabel::Pattern(pattern),
                coefficients,
            });
        }
    }
    if choice.eliminated_axis != Axis::Z {
        rows.push(ConstraintRow {
            label: RowLabel::SumZero,
            coefficients: vec![1.0; OUTCOMES],
        });
    }
    ConstraintSystem {
        choice: Some(*choice),
        rows,
    }
}

/// Orthonormal basis of the nullspace of all rows in `sys`.
pub fn nullspace(sys: &ConstraintSystem) -> Vec<Vec<f64>> {
    let svd = sys.matrix().svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let top = svd.singular_values.max();
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| top == 0.0 || **s <= RANK_TOL * top)
        .map(|(i, _)| v_t.row(i).iter().copied().collect())
        .collect()
}

/// Payoff tables free of mixed identity patterns: the nullspace of every
/// row except the sum-to-zero row.
pub fn solve_family(sys: &ConstraintSystem) -> Vec<Vec<f64>> {
    nullspace(&sys.without_sum_row())
}

/// Like [`solve_family`] but also imposing the sum-to-zero row when
/// present. For X and Y eliminations this fixes the constant offset.
pub fn solve_family_zero_sum(sys: &ConstraintSystem) -> Vec<Vec<f64>> {
    nullspace(sys)
}

/// Parity of the number of ones in an outcome.
pub fn is_odd_weight(outcome: usize) -> bool {
    outcome.count_ones() % 2 == 1
}

/// Unit vectors on the odd-weight and even-weight outcomes.
pub fn parity_basis() -> [Vec<f64>; 2] {
    let norm = (OUTCOMES as f64 / 2.0).sqrt();
    let odd = (0..OUTCOMES)
        .map(|b| if is_odd_weight(b) { 1.0 / norm } else { 0.0 })
        .collect();
    let even = (0..OUTCOMES)
        .map(|b| if is_odd_weight(b) { 0.0 } else { 1.0 / norm })
        .collect();
    [odd, even]
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Distance of `v` from the span of the orthonormal `basis`.
fn residual(v: &[f64], basis: &[Vec<f64>]) -> f64 {
    let mut r = v.to_vec();
    for b in basis {
        let c = dot(v, b);
        for (x, y) in r.iter_mut().zip(b) {
            *x -= c * y;
        }
    }
    dot(&r, &r).sqrt()
}

/// How far the span of `basis` is from the span of the two parity
/// indicators: zero exactly when they coincide.
pub fn parity_span_residual(basis: &[Vec<f64>]) -> f64 {
    let parity = parity_basis();
    if basis.len() != parity.len() {
        return f64::INFINITY;
    }
    let a = basis.iter().map(|v| residual(v, &parity));
    let b = parity.iter().map(|v| residual(v, basis));
    a.chain(b).fold(0.0, f64::max)
}

/// `(a, b)` when `c` is constant `a` on odd-weight and `b` on even-weight
/// outcomes, to within `tol`.
pub fn parity_parameters(c: &[f64], tol: f64) -> Option<(f64, f64)> {
    if c.len() != OUTCOMES {
        return None;
    }
    let a = c[1];
    let b = c[0];
    let fits = c
        .iter()
        .enumerate()
        .all(|(i, v)| (v - if is_odd_weight(i) { a } else { b }).abs() <= tol);
    fits.then_some((a, b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GameClass {
    /// Odd-weight outcomes pay more than even-weight ones.
    Minority,
    /// Even-weight outcomes pay more than odd-weight ones.
    AntiMinority,
    /// Every outcome pays a positive amount.
    TrivialAllWin,
    /// Every outcome pays a negative amount.
    TrivialAllLose,
    /// Not of the parity form, or identically zero.
    Other,
}

impl fmt::Display for GameClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GameClass::Minority => "Minority",
            GameClass::AntiMinority => "anti-Minority",
            GameClass::TrivialAllWin => "trivial (all win)",
            GameClass::TrivialAllLose => "trivial (all lose)",
            GameClass::Other => "other",
        })
    }
}

/// Classifies a payoff table of the parity form `a` (odd) / `b` (even).
pub fn classify_game(c: &[f64]) -> GameClass {
    let scale = c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let tol = 1e-9 * scale.max(f64::MIN_POSITIVE);
    let Some((a, b)) = parity_parameters(c, tol) else {
        return GameClass::Other;
    };
    let sign = |x: f64| if x.abs() <= tol { 0 } else if x > 0.0 { 1 } else { -1 };
    match (sign(a), sign(b)) {
        (0, 0) => GameClass::Other,
        (1, 1) => GameClass::TrivialAllWin,
        (-1, -1) => GameClass::TrivialAllLose,
        _ if a > b => GameClass::Minority,
        _ if a < b => GameClass::AntiMinority,
        _ => GameClass::Other,
    }
}
