use nalgebra::Matrix2;

use crate::{Complex, SpinState};

/// Single-qubit reduced density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitRdm {
    pub rho: Matrix2<Complex>,
}

impl QubitRdm {
    /// `(I + b·σ) / 2`.
    pub fn from_bloch(b: [f64; 3]) -> Self {
        let h = Complex::new(0.5, 0.0);
        let rho = Matrix2::new(
            h * (1.0 + b[2]),
            Complex::new(0.5 * b[0], -0.5 * b[1]),
            Complex::new(0.5 * b[0], 0.5 * b[1]),
            h * (1.0 - b[2]),
        );
        Self { rho }
    }

    pub fn bloch(&self) -> [f64; 3] {
        let r = &self.rho;
        [2.0 * r[(1, 0)].re, 2.0 * r[(1, 0)].im, (r[(0, 0)] - r[(1, 1)]).re]
    }

    pub fn trace(&self) -> Complex {
        self.rho.trace()
    }

    /// Eigenvalues `R₋ ≤ R₊`.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let b = self.bloch();
        let r = (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]).sqrt();
        [0.5 * (1.0 - r), 0.5 * (1.0 + r)]
    }

    pub fn purity(&self) -> f64 {
        (self.rho * self.rho).trace().re
    }
}

/// Bloch vector `⟨J⟩ / j` of one qubit of the symmetric state.
pub fn single_qubit_rdm(state: &SpinState) -> QubitRdm {
    let j = state.spin.j();
    let e = state.expect_j();
    QubitRdm::from_bloch([e[0] / j, e[1] / j, e[2] / j])
}

/// `1 − Tr ρ²`, clamped to `[0, 1/2]` against rounding.
pub fn linear_entropy(rdm: &QubitRdm) -> f64 {
    (1.0 - rdm.purity()).clamp(0.0, 0.5)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maximally_mixed() {
        let r = QubitRdm::from_bloch([0.0; 3]);
        assert_eq!(linear_entropy(&r), 0.5);
        assert_eq!(r.eigenvalues(), [0.5, 0.5]);
    }

    #[test]
    fn entropy_is_twice_determinant() {
        let r = QubitRdm::from_bloch([0.3, -0.2, 0.5]);
        let det = (r.rho[(0, 0)] * r.rho[(1, 1)] - r.rho[(0, 1)] * r.rho[(1, 0)]).re;
        assert!((linear_entropy(&r) - 2.0 * det).abs() < 1e-15);
        let [lo, hi] = r.eigenvalues();
        assert!((linear_entropy(&r) - 2.0 * lo * hi).abs() < 1e-15);
        assert!((r.trace().re - 1.0).abs() < 1e-15 && r.trace().im == 0.0);
        assert_eq!(r.bloch(), [0.3, -0.2, 0.5]);
    }
}
