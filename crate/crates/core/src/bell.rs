//! Correlation functions, Bell polynomials, local-hidden-variable bounds and
//! single-plane measurement schemes.
//!
//! Setting tuples `(k_1, ..., k_n)` with `k_i` in {1, 2} are stored as an
//! integer code whose bit `n-1-i` is `k_i - 1`, so observer 1 is the most
//! significant bit and the tuple `1111` is code 0.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::optimize::simplex::{self, SimplexOptions};
use crate::quantum::{apply_single, Mat2, Pauli, StateVector, SUPPORTED_QUBITS};

/// A plane spanned by two Pauli axes, listed in parametrization order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Plane {
    /// `cos(a) X + sin(a) Y`
    Xy,
    /// `cos(a) X + sin(a) Z`
    Xz,
    /// `cos(a) Z + sin(a) Y`; the YZ plane measured from the Z axis.
    Zy,
}

impl Plane {
    pub const ALL: [Plane; 3] = [Plane::Xy, Plane::Xz, Plane::Zy];

    pub fn axes(self) -> (Pauli, Pauli) {
        match self {
            Plane::Xy => (Pauli::X, Pauli::Y),
            Plane::Xz => (Pauli::X, Pauli::Z),
            Plane::Zy => (Pauli::Z, Pauli::Y),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Plane::Xy => "xy",
            Plane::Xz => "xz",
            Plane::Zy => "zy",
        }
    }

    pub fn parse(s: &str) -> Option<Plane> {
        match s.to_ascii_lowercase().as_str() {
            "xy" | "yx" => Some(Plane::Xy),
            "xz" | "zx" => Some(Plane::Xz),
            "zy" | "yz" => Some(Plane::Zy),
            _ => None,
        }
    }
}

impl fmt::Display for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Dichotomic observable `cos(angle) P1 + sin(angle) P2` in one plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneObservable {
    pub plane: Plane,
    pub angle: f64,
}

impl PlaneObservable {
    pub const fn new(plane: Plane, angle: f64) -> Self {
        PlaneObservable { plane, angle }
    }

    pub fn matrix(&self) -> Mat2 {
        let (p1, p2) = self.plane.axes();
        p1.matrix() * self.angle.cos() + p2.matrix() * self.angle.sin()
    }
}

/// Two settings per observer, both in that observer's plane.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementScheme {
    settings: Vec<[PlaneObservable; 2]>,
}

impl MeasurementScheme {
    pub fn new(settings: Vec<[PlaneObservable; 2]>) -> Result<Self> {
        for (i, pair) in settings.iter().enumerate() {
            if pair[0].plane != pair[1].plane {
                return Err(Error::MixedPlanes(i + 1));
            }
        }
        Ok(MeasurementScheme { settings })
    }

    /// Every observer measures `(angle1, angle2)` in `plane`.
    pub fn symmetric(n: usize, plane: Plane, angle1: f64, angle2: f64) -> Self {
        let pair = [
            PlaneObservable::new(plane, angle1),
            PlaneObservable::new(plane, angle2),
        ];
        MeasurementScheme {
            settings: vec![pair; n],
        }
    }

    /// Observer `i` measures `(angles[2i], angles[2i+1])` in `plane`.
    pub fn from_angles(plane: Plane, angles: &[f64]) -> Self {
        let settings = angles
            .chunks(2)
            .map(|c| [PlaneObservable::new(plane, c[0]), PlaneObservable::new(plane, c[1])])
            .collect();
        MeasurementScheme { settings }
    }

    pub fn n_observers(&self) -> usize {
        self.settings.len()
    }

    pub fn settings(&self) -> &[[PlaneObservable; 2]] {
        &self.settings
    }

    /// Observable for observer `i` (0-based) at setting `k` in {1, 2}.
    pub fn observable(&self, i: usize, k: u8) -> PlaneObservable {
        self.settings[i][(k - 1) as usize]
    }

    pub fn angles(&self) -> Vec<f64> {
        self.settings
            .iter()
            .flat_map(|p| [p[0].angle, p[1].angle])
            .collect()
    }
}

/// `constant + sum_k coefficient(k) E(k)` over all `2^n` setting tuples.
#[derive(Debug, Clone, PartialEq)]
pub struct BellPolynomial {
    n: usize,
    constant: f64,
    coefficients: Vec<f64>,
}

/// Code of a setting tuple written with entries in {1, 2}.
pub fn setting_code(tuple: &[u8]) -> usize {
    tuple.iter().fold(0, |acc, &k| (acc << 1) | (k as usize - 1))
}

/// Setting tuple (entries in {1, 2}) of a code.
pub fn setting_tuple(code: usize, n: usize) -> Vec<u8> {
    (0..n).map(|i| ((code >> (n - 1 - i)) & 1) as u8 + 1).collect()
}

impl BellPolynomial {
    pub fn new(n: usize, constant: f64, coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.len() != 1 << n {
            return Err(Error::LengthMismatch {
                expected: 1 << n,
                found: coefficients.len(),
            });
        }
        Ok(BellPolynomial {
            n,
            constant,
            coefficients,
        })
    }

    /// Parses a sign string such as `"-++-..."`, one sign per tuple in
    /// lexicographic order (`11..1` first).
    pub fn from_signs(n: usize, constant: f64, signs: &str) -> Result<Self> {
        let coefficients: Vec<f64> = signs
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '-' { -1.0 } else { 1.0 })
            .collect();
        BellPolynomial::new(n, constant, coefficients)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Coefficient of `E(k_1, ..., k_n)`.
    pub fn sign(&self, tuple: &[u8]) -> f64 {
        self.coefficients[setting_code(tuple)]
    }

    pub fn term_count(&self) -> usize {
        self.coefficients.iter().filter(|c| **c != 0.0).count()
    }

    /// Human-readable form, e.g. `4 - E(1111) + E(1112) ...`.
    pub fn display(&self) -> String {
        let mut out = String::new();
        if self.constant != 0.0 {
            out.push_str(&format!("{}", self.constant));
        }
        for (code, c) in self.coefficients.iter().enumerate() {
            if *c == 0.0 {
                continue;
            }
            let label: String = setting_tuple(code, self.n)
                .iter()
                .map(|k| char::from(b'0' + k))
                .collect();
            let sign = if *c < 0.0 { '-' } else { '+' };
            let mag = c.abs();
            if out.is_empty() && sign == '+' {
                out.push_str(&format!("E({label})"));
            } else if (mag - 1.0).abs() < 1e-15 {
                out.push_str(&format!(" {sign} E({label})"));
            } else {
                out.push_str(&format!(" {sign} {mag} E({label})"));
            }
        }
        out.trim_start().to_string()
    }
}

fn check_observers(state: &StateVector, n: usize) -> Result<()> {
    if state.n_qubits() != n {
        return Err(Error::DimensionMismatch {
            left: state.n_qubits(),
            right: n,
        });
    }
    Ok(())
}

/// `<state| A_1 x ... x A_n |state>`.
pub fn correlation(state: &StateVector, obs: &[PlaneObservable]) -> Result<f64> {
    check_observers(state, obs.len())?;
    let ops: Vec<Mat2> = obs.iter().map(|o| o.matrix()).collect();
    let fin = state.apply_local(&ops)?;
    Ok(state.inner(&fin)?.re)
}

/// Every correlation `E(k)` of a scheme, indexed by setting code.
pub fn correlation_table(state: &StateVector, scheme: &MeasurementScheme) -> Result<Vec<f64>> {
    let n = scheme.n_observers();
    check_observers(state, n)?;
    let mats: Vec<[Mat2; 2]> = scheme
        .settings()
        .iter()
        .map(|p| [p[0].matrix(), p[1].matrix()])
        .collect();
    let mut table = vec![0.0; 1 << n];
    let mut scratch: Vec<Vec<Complex64>> = vec![Vec::new(); n + 1];
    scratch[0] = state.amplitudes().to_vec();
    fill_table(state, &mats, 0, 0, &mut scratch, &mut table);
    Ok(table)
}

fn fill_table(
    state: &StateVector,
    mats: &[[Mat2; 2]],
    depth: usize,
    code: usize,
    scratch: &mut [Vec<Complex64>],
    table: &mut [f64],
) {
    let n = mats.len();
    if depth == n {
        let v: Complex64 = state
            .amplitudes()
            .iter()
            .zip(&scratch[n])
            .map(|(a, b)| a.conj() * b)
            .sum();
        table[code] = v.re;
        return;
    }
    for k in 0..2 {
        let mut next = scratch[depth].clone();
        apply_single(&mut next, n, depth, &mats[depth][k]);
        scratch[depth + 1] = next;
        fill_table(state, mats, depth + 1, (code << 1) | k, scratch, table);
    }
}

/// `constant + sum_k sign(k) E(k)`.
pub fn evaluate(
    poly: &BellPolynomial,
    state: &StateVector,
    scheme: &MeasurementScheme,
) -> Result<f64> {
    if scheme.n_observers() != poly.n {
        return Err(Error::DimensionMismatch {
            left: poly.n,
            right: scheme.n_observers(),
        });
    }
    let table = correlation_table(state, scheme)?;
    Ok(poly.constant
        + poly
            .coefficients
            .iter()
            .zip(&table)
            .map(|(c, e)| c * e)
            .sum::<f64>())
}

/// Four-party payoff polynomial: constant 4 plus the sign pattern of the
/// 32-scaled Minority payoff under the optimal strategy.
pub fn payoff_polynomial() -> BellPolynomial {
    BellPolynomial::from_signs(4, 4.0, "-++- +--+ +--+ -++-").expect("16 signs")
}

/// MABK polynomial built by the Mermin-Klyshko recursion
///
/// `B_n = 1/2 B_{n-1} (A_n + A'_n) + 1/2 B'_{n-1} (A_n - A'_n)`,
/// `B'_n = 1/2 B'_{n-1} (A'_n + A_n) + 1/2 B_{n-1} (A'_n - A_n)`,
///
/// seeded with `B_1 = A'_1 = setting 2`, `B'_1 = A_1 = setting 1`, then scaled
/// by `2^(n/2)` so every coefficient is +-1. For n = 4 this is the standard
/// sixteen-term form with local bound 4.
pub fn mabk_polynomial(n: usize) -> Result<BellPolynomial> {
    if !SUPPORTED_QUBITS.contains(&n) {
        return Err(Error::UnsupportedQubitCount(n, SUPPORTED_QUBITS));
    }
    // in the recursion "A" is setting 2 (bit 1) and "A'" is setting 1 (bit 0)
    const A: usize = 1;
    const A_PRIME: usize = 0;
    let mut b = vec![0.0; 2];
    let mut b_prime = vec![0.0; 2];
    b[A] = 1.0;
    b_prime[A_PRIME] = 1.0;
    for _ in 1..n {
        let len = b.len() * 2;
        let mut nb = vec![0.0; len];
        let mut nbp = vec![0.0; len];
        for code in 0..b.len() {
            let (x, xp) = (b[code], b_prime[code]);
            nb[(code << 1) | A] += 0.5 * (x + xp);
            nb[(code << 1) | A_PRIME] += 0.5 * (x - xp);
            nbp[(code << 1) | A_PRIME] += 0.5 * (xp + x);
            nbp[(code << 1) | A] += 0.5 * (xp - x);
        }
        b = nb;
        b_prime = nbp;
    }
    let scale = 2f64.powi(n as i32 / 2);
    let coefficients = b.into_iter().map(|c| c * scale).collect();
    BellPolynomial::new(n, 0.0, coefficients)
}

/// Largest `|value|` over all deterministic local assignments: each observer
/// fixes +-1 outcomes for both settings independently (`4^n` cases).
pub fn lhv_bound(poly: &BellPolynomial) -> f64 {
    let n = poly.n;
    let mut best = 0.0f64;
    for assignment in 0..1usize << (2 * n) {
        // bit 2i: outcome of setting 1 at observer i, bit 2i+1: setting 2
        let outcome = |i: usize, k: usize| {
            if (assignment >> (2 * i + k)) & 1 == 1 {
                -1.0
            } else {
                1.0
            }
        };
        let mut value = poly.constant;
        for (code, c) in poly.coefficients.iter().enumerate() {
            if *c == 0.0 {
                continue;
            }
            let prod: f64 = (0..n)
                .map(|i| outcome(i, (code >> (n - 1 - i)) & 1))
                .product();
            value += c * prod;
        }
        best = best.max(value.abs());
    }
    best
}

/// Symmetric angle pair giving maximal GHZ violation for `n` observers.
pub fn werner_angles(n: usize) -> Result<(f64, f64)> {
    match n {
        4 => Ok((-PI / 16.0, 7.0 * PI / 16.0)),
        6 => Ok((PI / 24.0, 13.0 * PI / 24.0)),
        _ => Err(Error::UnsupportedQubitCount(n, SUPPORTED_QUBITS)),
    }
}

pub fn werner_scheme(n: usize, plane: Plane) -> Result<MeasurementScheme> {
    let (a1, a2) = werner_angles(n)?;
    Ok(MeasurementScheme::symmetric(n, plane, a1, a2))
}

/// Observers 1-3 measure {X, Y}; observer 4 measures {(X-Y)/sqrt2, (X+Y)/sqrt2}.
pub fn asymmetric_ghz_scheme() -> MeasurementScheme {
    let xy = [
        PlaneObservable::new(Plane::Xy, 0.0),
        PlaneObservable::new(Plane::Xy, FRAC_PI_2),
    ];
    let rotated = [
        PlaneObservable::new(Plane::Xy, -FRAC_PI_4),
        PlaneObservable::new(Plane::Xy, FRAC_PI_4),
    ];
    MeasurementScheme {
        settings: vec![xy, xy, xy, rotated],
    }
}

/// Points per angle in the coarse search grid.
pub const VIOLATION_GRID: usize = 32;
/// Grid points refined by the simplex.
pub const VIOLATION_SEEDS: usize = 5;

fn grid_angle(i: usize) -> f64 {
    -PI + 2.0 * PI * i as f64 / VIOLATION_GRID as f64
}

/// Largest `|evaluate(poly, state, scheme)|` over single-plane schemes in
/// `plane`, with one shared angle pair (`symmetric`) or a free pair per
/// observer. Returns the maximizing scheme and the violation magnitude.
///
/// Search: the 32 x 32 grid of shared angle pairs, then Nelder-Mead from the
/// five best grid points and from the Werner pair (when defined for `n`).
/// The asymmetric search refines all `2n` angles from the same seeds.
pub fn maximize_violation(
    poly: &BellPolynomial,
    state: &StateVector,
    plane: Plane,
    symmetric: bool,
) -> Result<(MeasurementScheme, f64)> {
    let n = poly.n;
    check_observers(state, n)?;
    let magnitude = |angles: &[f64]| -> f64 {
        let scheme = if symmetric {
            MeasurementScheme::symmetric(n, plane, angles[0], angles[1])
        } else {
            MeasurementScheme::from_angles(plane, angles)
        };
        evaluate(poly, state, &scheme)
            .map(f64::abs)
            .unwrap_or(f64::NEG_INFINITY)
    };

    let mut grid: Vec<(f64, [f64; 2])> = Vec::with_capacity(VIOLATION_GRID * VIOLATION_GRID);
    for i in 0..VIOLATION_GRID {
        for j in 0..VIOLATION_GRID {
            let pair = [grid_angle(i), grid_angle(j)];
            let v = magnitude(&if symmetric {
                pair.to_vec()
            } else {
                pair.repeat(n)
            });
            grid.push((v, pair));
        }
    }
    // stable sort keeps grid order among equal values
    grid.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut seeds: Vec<[f64; 2]> = grid.iter().take(VIOLATION_SEEDS).map(|g| g.1).collect();
    if let Ok((a1, a2)) = werner_angles(n) {
        seeds.push([a1, a2]);
    }

    let opts = SimplexOptions {
        initial_step: 2.0 * PI / VIOLATION_GRID as f64,
        ..SimplexOptions::default()
    };
    let mut best: Option<(f64, Vec<f64>)> = None;
    for seed in seeds {
        let x0 = if symmetric { seed.to_vec() } else { seed.repeat(n) };
        let r = simplex::minimize(|x| -magnitude(x), &x0, &opts);
        let value = magnitude(&r.point);
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, r.point));
        }
    }
    let (value, angles) = best.expect("at least one seed");
    let scheme = if symmetric {
        MeasurementScheme::symmetric(n, plane, angles[0], angles[1])
    } else {
        MeasurementScheme::from_angles(plane, &angles)
    };
    Ok((scheme, value))
}
