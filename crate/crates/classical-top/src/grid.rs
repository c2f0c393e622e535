use serde::{Deserialize, Serialize};

use crate::{lit, ClassicalError, Real, Result};

/// `n_theta × n_phi` grid of initial conditions.
///
/// `θ_i = (i + ½)π / n_theta` (half-cell offset keeps clear of the poles),
/// `φ_j = −π + 2πj / n_phi`, so φ covers `[−π, π)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n_theta: usize,
    pub n_phi: usize,
}

impl GridSpec {
    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta == 0 || n_phi == 0 {
            return Err(ClassicalError::Precondition("grid dimensions must be positive".into()));
        }
        Ok(Self { n_theta, n_phi })
    }

    pub fn len(&self) -> usize {
        self.n_theta * self.n_phi
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn theta<T: Real>(&self, i: usize) -> T {
        (lit::<T>(i as f64) + lit(0.5)) * T::PI() / lit(self.n_theta as f64)
    }

    pub fn phi<T: Real>(&self, j: usize) -> T {
        -T::PI() + lit::<T>(2.0 * j as f64) * T::PI() / lit(self.n_phi as f64)
    }

    /// `(θ, φ)` of the cell at flat row-major index `idx`.
    pub fn cell<T: Real>(&self, idx: usize) -> (T, T) {
        (self.theta(idx / self.n_phi), self.phi(idx % self.n_phi))
    }
}

/// Row-major (θ outer, φ inner) values over a [`GridSpec`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid<T> {
    pub spec: GridSpec,
    pub values: Vec<T>,
}

impl<T: Real> Grid<T> {
    pub fn get(&self, i_theta: usize, i_phi: usize) -> T {
        self.values[i_theta * self.spec.n_phi + i_phi]
    }

    /// `(θ, φ, value)` rows in output order.
    pub fn rows(&self) -> impl Iterator<Item = (T, T, T)> + '_ {
        self.values.iter().enumerate().map(|(idx, &v)| {
            let (t, p) = self.spec.cell::<T>(idx);
            (t, p, v)
        })
    }
}
