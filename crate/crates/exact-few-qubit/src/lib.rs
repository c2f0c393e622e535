//! Closed-form dynamics of the 2-, 3- and 4-qubit kicked top at `p = π/2`.
//!
//! Each system size has two families of functions:
//!
//! * `verbatim_*` evaluate the reference expressions as printed, in their own
//!   conventions (qubit product state `cos|0⟩ + e^{−iφ} sin|1⟩`, no global phase).
//! * `exact_*` are the oracle-corrected forms. Their `(θ₀, φ₀)` mean the same
//!   coherent state as [`spin_quantum::coherent_state`] and their coefficients
//!   equal the matrix evolution exactly, including the global phase.
//!
//! Coefficients are in the parity basis of [`spin_quantum::parity_basis`]:
//! `[Φ₀⁺, Φ₁⁺, Φ₀⁻]`, `[Φ₀⁺, Φ₁⁺, Φ₀⁻, Φ₁⁻]` and `[Φ₀⁺, Φ₁⁺, Φ₂⁺, Φ₀⁻, Φ₁⁻]`.

pub mod four;
pub mod recurrence;
pub mod three;
pub mod two;
pub mod validate;

use std::fmt::Debug;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};
use serde::{Deserialize, Serialize};

pub use four::{
    avg_entropy_4q_special, entropy_4q, exact_entropy_4q, exact_state_4q, s00_4q, verbatim_entropy_4q, verbatim_s00_4q,
    verbatim_state_4q, CoefficientSet4Q,
};
pub use recurrence::{
    identity_recurrence_scan, large_system_recurrence_check, recurrence_predicate, KChoice, KValue, Recurrence, RecurrenceScan};
pub use three::{
    avg_entropy_3q_special, entropy_3q, exact_entropy_3q, exact_state_3q, rotation_angles_3q, s00_3q, verbatim_state_3q,
    CoefficientSet3Q, RotationAngles3Q,
};
pub use two::{
    avg_entropy_2q, entropy_2q, exact_entropy_2q, exact_state_2q, exact_state_2q_double, s00_2q, verbatim_state_2q,
    CoefficientSet2Q,
};
pub use validate::{sample_tuples, validate_exact, FormulaCheck, Sample, ValidationReport};

/// Scalar type of the closed forms.
pub trait Real: Float + FloatConst + FromPrimitive + Send + Sync + Debug + 'static {}

impl<T> Real for T where T: Float + FloatConst + FromPrimitive + Send + Sync + Debug + 'static {}

#[inline]
pub(crate) fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in T")
}

#[inline]
pub(crate) fn cis<T: Real>(x: T) -> Complex<T> {
    Complex::from_polar(T::one(), x)
}

#[inline]
pub(crate) fn re<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

#[inline]
pub(crate) fn im<T: Real>(x: T) -> Complex<T> {
    Complex::new(T::zero(), x)
}

/// `cos(nπ/2)` and `sin(nπ/2)` without rounding.
pub(crate) fn quarter_turn<T: Real>(n: u64) -> (T, T) {
    match n % 4 {
        0 => (T::one(), T::zero()),
        1 => (T::zero(), T::one()),
        2 => (-T::one(), T::zero()),
        _ => (T::zero(), -T::one()),
    }
}

/// `(−1)^n`.
pub(crate) fn sign<T: Real>(n: u64) -> T {
    if n % 2 == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// The two initial states with displayed special-case formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialState {
    /// `(θ₀, φ₀) = (0, 0)`.
    Pole,
    /// `(θ₀, φ₀) = (π/2, −π/2)`.
    Equator,
}

impl SpecialState {
    pub fn angles(&self) -> (f64, f64) {
        match self {
            SpecialState::Pole => (0.0, 0.0),
            SpecialState::Equator => (std::f64::consts::FRAC_PI_2, -std::f64::consts::FRAC_PI_2),
        }
    }

    /// Recognises the two special `(θ₀, φ₀)` pairs.
    pub fn from_angles(theta0: f64, phi0: f64) -> Result<Self> {
        let close = |a: f64, b: f64| (a - b).abs() < 1e-12;
        if close(theta0, 0.0) && close(phi0, 0.0) {
            Ok(SpecialState::Pole)
        } else if close(theta0, std::f64::consts::FRAC_PI_2) && close(phi0, -std::f64::consts::FRAC_PI_2) {
            Ok(SpecialState::Equator)
        } else {
            Err(ExactError::Unsupported(format!("no closed-form average for ({theta0}, {phi0})")))
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExactError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Quantum(#[from] spin_quantum::QuantumError),
}

pub type Result<T> = std::result::Result<T, ExactError>;

pub type Coefficients2 = CoefficientSet2Q<f64>;
pub type Coefficients3 = CoefficientSet3Q<f64>;
pub type Coefficients4 = CoefficientSet4Q<f64>;
