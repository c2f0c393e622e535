//! Classical kicked top on the unit sphere.
//!
//! The map applies a rotation by `p` about the y axis followed by a twist about
//! z whose angle is `k * z^(m-1)`. An optional second twist about x by `k' * x`
//! gives the double-kicked top.
//!
//! Everything is generic over [`Real`]; the `f64` aliases below are what the
//! rest of the workspace uses.

pub mod fixed;
pub mod grid;
pub mod jacobian;
pub mod lyapunov;
pub mod map;
pub mod point;
pub mod stability;
pub mod symmetry;

use std::fmt::Debug;

use num_traits::{Float, FloatConst, FromPrimitive};

pub use fixed::{find_fixed_points, period1_symmetry_line_roots, period2_family, FixedPointConfig, FixedPointRecord};
pub use grid::{Grid, GridSpec};
pub use jacobian::{orbit_jacobian, reduced_jacobian, tangent_basis, tangent_jacobian, Mat2, Mat3, TangentJacobian};
pub use lyapunov::{lyapunov, lyapunov_grid, lyapunov_two_trajectory, LyapunovConfig, LyapunovEstimate};
pub use map::{iterate, step, step_raw};
pub use point::{SpherePoint, TangentFrame, TopParams};
pub use stability::{stability, Stability, Verdict};
pub use symmetry::{symmetry_apply, Symmetry};

/// Scalar type accepted by the classical code.
pub trait Real: Float + FloatConst + FromPrimitive + Send + Sync + Debug + 'static {}

impl<T> Real for T where T: Float + FloatConst + FromPrimitive + Send + Sync + Debug + 'static {}

/// Converts an `f64` literal into `T`.
#[inline]
pub(crate) fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in T")
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ClassicalError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, ClassicalError>;

pub type Point = SpherePoint<f64>;
pub type Params = TopParams<f64>;
pub type FixedPoint = FixedPointRecord<f64>;
pub type LleGrid = Grid<f64>;
