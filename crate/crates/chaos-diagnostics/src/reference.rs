use std::sync::OnceLock;

use num_traits::{Float, FloatConst};
use serde::{Deserialize, Serialize};

use crate::stats::{integrate, integrate_half_line};
use crate::{DiagnosticsError, Result};

/// Nearest-neighbour spacing laws at unit mean spacing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpacingKind {
    Poisson,
    Goe,
    Gue,
    Gse,
}

fn c<T: Float>(x: f64) -> T {
    T::from(x).unwrap()
}

/// `P(s)`: `e^{−s}`, `(π/2) s e^{−πs²/4}` and the β = 2, 4 Wigner surmises.
pub fn spacing_reference<T: Float + FloatConst>(kind: SpacingKind, s: T) -> T {
    let pi = T::PI();
    match kind {
        SpacingKind::Poisson => (-s).exp(),
        SpacingKind::Goe => pi / c(2.0) * s * (-pi * s * s / c(4.0)).exp(),
        SpacingKind::Gue => c::<T>(32.0) / (pi * pi) * s * s * (-c::<T>(4.0) * s * s / pi).exp(),
        SpacingKind::Gse => {
            c::<T>(262_144.0) / (c::<T>(729.0) * pi * pi * pi) * s.powi(4) * (-c::<T>(64.0) * s * s / (c::<T>(9.0) * pi)).exp()
        }
    }
}

pub fn spacing_cdf(kind: SpacingKind, s: f64) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    match kind {
        SpacingKind::Poisson => 1.0 - (-s).exp(),
        SpacingKind::Goe => 1.0 - (-std::f64::consts::PI * s * s / 4.0).exp(),
        _ => integrate(|x| spacing_reference(kind, x), 0.0, s, 1e-12).min(1.0),
    }
}

/// Consecutive-spacing ratio laws on `r ∈ [0, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "law")]
pub enum RatioLaw {
    /// Uncorrelated levels, `1/(1 + r)²`.
    Poisson,
    /// `(r + r²)^β / (1 + r + r²)^{1 + 3β/2}`, renormalised numerically.
    Surmise { beta: u32 },
}

fn surmise_shape<T: Float>(beta: u32, r: T) -> T {
    let b = beta as i32;
    (r + r * r).powi(b) / (T::one() + r + r * r).powf(c::<T>(1.0 + 1.5 * beta as f64))
}

fn surmise_norm(beta: u32) -> f64 {
    static NORMS: OnceLock<[f64; 3]> = OnceLock::new();
    let n = NORMS.get_or_init(|| [1, 2, 4].map(|b| integrate_half_line(|r| surmise_shape(b, r), 1e-13)));
    match beta {
        1 => n[0],
        2 => n[1],
        _ => n[2],
    }
}

impl RatioLaw {
    pub fn surmise(beta: u32) -> Result<Self> {
        match beta {
            1 | 2 | 4 => Ok(RatioLaw::Surmise { beta }),
            _ => Err(DiagnosticsError::Domain(format!("β must be 1, 2 or 4, got {beta}"))),
        }
    }

    pub fn density<T: Float>(&self, r: T) -> T {
        if r < T::zero() {
            return T::zero();
        }
        match *self {
            RatioLaw::Poisson => T::one() / ((T::one() + r) * (T::one() + r)),
            RatioLaw::Surmise { beta } => surmise_shape(beta, r) / c(surmise_norm(beta)),
        }
    }

    pub fn cdf(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        match self {
            RatioLaw::Poisson => r / (1.0 + r),
            // P(r) = P(1/r)/r², so F(r) = 1 − F(1/r) and the integral stays on [0, 1].
            RatioLaw::Surmise { .. } if r > 1.0 => 1.0 - self.cdf(1.0 / r),
            RatioLaw::Surmise { .. } => integrate(|x| self.density(x), 0.0, r, 1e-13),
        }
    }

    /// Mean of `min(r, 1/r)`, i.e. `2∫₀¹ r P(r) dr`.
    pub fn mean_tilde(&self) -> f64 {
        2.0 * integrate(|x| x * self.density(x), 0.0, 1.0, 1e-13)
    }

    /// The printed prefactor `3^{3(1+β)/2} Γ(1+β/2)² / Γ(1+β)`.
    pub fn printed_constant(beta: u32) -> f64 {
        let gamma_sq_over = match beta {
            1 => std::f64::consts::PI / 4.0,
            2 => 1.0 / 2.0,
            4 => 4.0 / 24.0,
            _ => f64::NAN,
        };
        3f64.powf(1.5 * (1.0 + beta as f64)) * gamma_sq_over
    }

    /// `∫₀^∞` of the printed density, for comparison with 1.
    pub fn printed_integral(beta: u32) -> f64 {
        Self::printed_constant(beta) * surmise_norm(beta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::integrate_half_line;

    #[test]
    fn spacing_densities_normalised() {
        for k in [SpacingKind::Poisson, SpacingKind::Goe, SpacingKind::Gue, SpacingKind::Gse] {
            let z = integrate_half_line(|s| spacing_reference(k, s), 1e-12);
            let m = integrate_half_line(|s| s * spacing_reference(k, s), 1e-12);
            assert!((z - 1.0).abs() < 1e-6, "{k:?}");
            assert!((m - 1.0).abs() < 1e-6, "{k:?}");
            assert!((spacing_cdf(k, 50.0) - 1.0).abs() < 1e-9);
        }
        assert_eq!(spacing_reference(SpacingKind::Poisson, 0.0), 1.0);
        assert_eq!(spacing_reference(SpacingKind::Goe, 0.0), 0.0);
        assert!((spacing_reference(SpacingKind::Goe, 1.0_f32) - spacing_reference(SpacingKind::Goe, 1.0_f64) as f32).abs() < 1e-6);
    }

    #[test]
    fn ratio_laws() {
        for law in [RatioLaw::Poisson, RatioLaw::Surmise { beta: 1 }, RatioLaw::Surmise { beta: 2 }, RatioLaw::Surmise { beta: 4 }] {
            assert!((integrate_half_line(|r| law.density(r), 1e-12) - 1.0).abs() < 1e-6, "{law:?}");
            assert!((law.cdf(1.0) - 0.5).abs() < 1e-9);
        }
        assert!((RatioLaw::Poisson.mean_tilde() - (2.0 * 2f64.ln() - 1.0)).abs() < 1e-9);
        // Surmise ⟨r̃⟩ in closed form: 4 − 2√3, 2√3/π − 1/2, 32√3/(15π) − 1/2.
        let (s3, pi) = (3f64.sqrt(), std::f64::consts::PI);
        for (b, want) in [(1, 4.0 - 2.0 * s3), (2, 2.0 * s3 / pi - 0.5), (4, 32.0 * s3 / (15.0 * pi) - 0.5)] {
            let got = RatioLaw::Surmise { beta: b }.mean_tilde();
            assert!((got - want).abs() < 1e-9, "β={b}: {got}");
        }
        // β = 1 closed form 27/8.
        assert!((RatioLaw::Surmise { beta: 1 }.density(1.0) - 27.0 / 8.0 * 2.0 / 3f64.powf(2.5)).abs() < 1e-9);
        assert!((RatioLaw::printed_integral(1) - 1.0).abs() > 1.0);
        assert!(RatioLaw::surmise(3).is_err());
    }
}
