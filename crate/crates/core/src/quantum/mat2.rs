//! Dense 2x2 complex matrices for single-qubit operators.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::pauli::Pauli;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Row-major 2x2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub const fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub const fn identity() -> Self {
        Mat2::new(ONE, ZERO, ZERO, ONE)
    }

    pub const fn zero() -> Self {
        Mat2::new(ZERO, ZERO, ZERO, ZERO)
    }

    pub const fn pauli_x() -> Self {
        Mat2::new(ZERO, ONE, ONE, ZERO)
    }

    pub const fn pauli_y() -> Self {
        Mat2::new(ZERO, Complex64::new(0.0, -1.0), I, ZERO)
    }

    pub const fn pauli_z() -> Self {
        Mat2::new(ONE, ZERO, ZERO, Complex64::new(-1.0, 0.0))
    }

    /// Projector |j><j| onto a computational basis state.
    pub fn projector(j: u8) -> Self {
        if j == 0 {
            Mat2::new(ONE, ZERO, ZERO, ZERO)
        } else {
            Mat2::new(ZERO, ZERO, ZERO, ONE)
        }
    }

    /// Linear combination `i*I + x*X + y*Y + z*Z` with complex weights.
    pub fn from_pauli_coordinates(c: [Complex64; 4]) -> Self {
        let [ci, cx, cy, cz] = c;
        Mat2::new(ci + cz, cx - I * cy, cx + I * cy, ci - cz)
    }

    /// Coordinates in the (I, X, Y, Z) basis, `c_P = tr(P M) / 2`.
    pub fn pauli_coordinates(&self) -> [Complex64; 4] {
        let [[a, b], [c, d]] = self.0;
        [
            (a + d) * 0.5,
            (b + c) * 0.5,
            (b - c) * I * 0.5,
            (a - d) * 0.5,
        ]
    }

    pub fn coordinate(&self, p: Pauli) -> Complex64 {
        self.pauli_coordinates()[p.index()]
    }

    pub fn adjoint(&self) -> Self {
        let [[a, b], [c, d]] = self.0;
        Mat2::new(a.conj(), c.conj(), b.conj(), d.conj())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let [[a, b], [c, d]] = self.0;
        Mat2::new(a * s, b * s, c * s, d * s)
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// Largest absolute entry of `self - other`.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        worst
    }

    /// Deviation of `U^dagger U` from the identity (max-entry norm).
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Mat2::identity())
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() < tol
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) < tol
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = self.0;
        let b = rhs.0;
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Mat2(out)
    }
}

impl Add for Mat2 {
    type Output = Mat2;

    fn add(self, rhs: Mat2) -> Mat2 {
        let mut out = self.0;
        for (row, rhs_row) in out.iter_mut().zip(rhs.0) {
            for (x, y) in row.iter_mut().zip(rhs_row) {
                *x += y;
            }
        }
        Mat2(out)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;

    fn sub(self, rhs: Mat2) -> Mat2 {
        self + (-rhs)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;

    fn neg(self) -> Mat2 {
        self.scale(-ONE)
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: f64) -> Mat2 {
        self.scale(Complex64::new(rhs, 0.0))
    }
}
