//! State vectors, single-qubit operators and Pauli-sum observables.

mod family;
mod mat2;
mod pauli;
mod state;

pub use family::StateFamily;
pub use mat2::Mat2;
pub use pauli::{Observable, Pauli, PauliString, HERMITIAN_TOL};
pub use state::{
    epr_product, perfect_matchings, phi_in_raw, StateVector, NORM_TOL, SUPPORTED_QUBITS,
};

pub(crate) use state::apply_single;
