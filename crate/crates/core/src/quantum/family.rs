use std::fmt;
use std::str::FromStr;

use super::state::StateVector;
use crate::error::Result;

/// One-parameter families of initial states, indexed by `alpha` in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StateFamily {
    /// GHZ plus EPR_AB x EPR_CD.
    Psi4,
    /// GHZ plus the three EPR pairings, literal prefactor then renormalized.
    Phi4,
    /// GHZ plus the normalized pairing sum carrying weight `1 - alpha^2`.
    Phi4Balanced,
    /// Six-qubit GHZ plus the normalized sum over all 15 matchings.
    Six,
}

impl StateFamily {
    pub const ALL: [StateFamily; 4] = [
        StateFamily::Psi4,
        StateFamily::Phi4,
        StateFamily::Phi4Balanced,
        StateFamily::Six,
    ];

    pub fn state(self, alpha: f64) -> Result<StateVector> {
        match self {
            StateFamily::Psi4 => StateVector::psi_in(alpha),
            StateFamily::Phi4 => StateVector::phi_in(alpha),
            StateFamily::Phi4Balanced => StateVector::phi_in_balanced(alpha),
            StateFamily::Six => StateVector::six_in(alpha),
        }
    }

    pub fn n_qubits(self) -> usize {
        match self {
            StateFamily::Six => 6,
            _ => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StateFamily::Psi4 => "psi4",
            StateFamily::Phi4 => "phi4",
            StateFamily::Phi4Balanced => "phi4b",
            StateFamily::Six => "six",
        }
    }
}

impl fmt::Display for StateFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StateFamily {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        StateFamily::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown state family '{s}' (expected psi4, phi4, phi4b or six)"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for f in StateFamily::ALL {
            assert_eq!(f.name().parse::<StateFamily>().unwrap(), f);
            assert_eq!(f.state(0.3).unwrap().n_qubits(), f.n_qubits());
        }
        assert!("psi5".parse::<StateFamily>().is_err());
    }
}
