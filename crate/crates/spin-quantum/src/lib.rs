//! Quantum kicked top at spin `j`.
//!
//! States live in the `2j + 1` dimensional symmetric subspace of `2j` qubits.
//! Basis index `a` carries `m = j − a`, so index 0 is the all-up state.
//! Matrices are dense `f64` complex.

pub mod floquet;
pub mod operators;
pub mod parity;
pub mod rdm;
pub mod spectrum;
pub mod spin;
pub mod state;

mod entropy;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub use entropy::{averaged_entropy, entropy_landscape, entropy_series, AveragedEntropy, DEFAULT_N_MAX};
pub use floquet::{build_floquet, FloquetCache, FloquetOperator, Variant};
pub use operators::{build_operators, AngularMomentumSet};
pub use parity::{block_leakage, parity_basis, parity_operator, split_blocks, ParityBasis, ParityBlocks};
pub use rdm::{linear_entropy, single_qubit_rdm, QubitRdm};
pub use spectrum::{read_eigenphase_dump, unitary_eigen, write_eigenphase_dump, DumpBlock, DumpHeader, UnitaryEigen};
pub use spin::Spin;
pub use state::{coherent_state, evolve, evolve_trajectory, SpinState};

pub type Complex = Complex64;
pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;
pub type Params = classical_top::Params;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QuantumError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("parity blocks leak: max |<+|U|->| = {leakage:e}")]
    SymmetryViolation { leakage: f64 },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<classical_top::ClassicalError> for QuantumError {
    fn from(e: classical_top::ClassicalError) -> Self {
        match e {
            classical_top::ClassicalError::Domain(s) => QuantumError::Domain(s),
            classical_top::ClassicalError::Precondition(s) => QuantumError::Precondition(s),
        }
    }
}

impl From<std::io::Error> for QuantumError {
    fn from(e: std::io::Error) -> Self {
        QuantumError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, QuantumError>;

/// Largest absolute entry of `a − b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
