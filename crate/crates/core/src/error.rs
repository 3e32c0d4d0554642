use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported qubit count {0} (expected one of {1:?})")]
    UnsupportedQubitCount(usize, &'static [usize]),

    #[error("state parameter alpha = {0} is outside [0, 1]")]
    AlphaOutOfRange(f64),

    #[error("operator for qubit {qubit} is not unitary (deviation {deviation:e})")]
    NotUnitary { qubit: usize, deviation: f64 },

    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("dimension mismatch: {left} qubits vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },

    #[error("observable is not Hermitian (imaginary part {0:e})")]
    NonHermitian(f64),

    #[error("amplitudes are not normalized (norm^2 = {0})")]
    NotNormalized(f64),

    #[error("strategy angle {name} = {value} outside {range}")]
    AngleOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("observer {0} mixes measurement planes")]
    MixedPlanes(usize),

    #[error("payoff difference does not change sign on [0, 1] (g(0) = {g0:e}, g(1) = {g1:e})")]
    NoSignChange { g0: f64, g1: f64 },

    #[error("elimination of {axis} is not satisfied at theta = {theta}, beta = {beta} (residual {residual:e})")]
    InvalidElimination {
        axis: char,
        theta: f64,
        beta: f64,
        residual: f64,
    },

    #[error("invalid alpha grid: {0}")]
    InvalidGrid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
