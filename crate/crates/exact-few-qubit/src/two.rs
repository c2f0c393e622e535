use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::{cis, lit, quarter_turn, re, Real};

/// `|ψ_n⟩ = c₀|Φ₀⁺⟩ + c₁|Φ₁⁺⟩ + c₂|Φ₀⁻⟩` at `j = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSet2Q<T> {
    pub c: [Complex<T>; 3],
    pub k_r: T,
    pub k_theta: T,
    pub n: u64,
}

impl<T: Real> CoefficientSet2Q<T> {
    pub fn norm_sqr(&self) -> T {
        self.c.iter().fold(T::zero(), |s, c| s + c.norm_sqr())
    }
}

/// Printed coefficients with `k_r = (k + k')/2`, `k_θ = (k − k')/2`.
pub fn verbatim_state_2q<T: Real>(theta0: T, phi0: T, k_r: T, k_theta: T, n: u64) -> CoefficientSet2Q<T> {
    let (cn, sn) = quarter_turn::<T>(n);
    let (st, ct) = theta0.sin_cos();
    let (sp, cp) = phi0.sin_cos();
    let h = T::one() / lit::<T>(2.0).sqrt();
    let two = lit::<T>(2.0);
    let a = Complex::new(ct * cp, sp);
    let c0 = cis(-(k_theta + two * phi0) / two) * h * (re(-sn * st) + cis(k_theta / two) * a * cn);
    let c1 = cis(-phi0) * h * (re(cn * st) + cis(k_theta / two) * a * sn);
    let c2 = cis(-(lit::<T>(n as f64) * k_r + two * phi0) / two) * h * Complex::new(cp, ct * sp);
    CoefficientSet2Q { c: [c0, c1, c2], k_r, k_theta, n }
}

/// Double-kicked coefficients in the matrix convention: printed form at `−φ₀`
/// times the global phase `e^{−i n k_r / 2}`.
pub fn exact_state_2q_double<T: Real>(theta0: T, phi0: T, k: T, k_prime: T, n: u64) -> CoefficientSet2Q<T> {
    let two = lit::<T>(2.0);
    let (k_r, k_theta) = ((k + k_prime) / two, (k - k_prime) / two);
    let mut s = verbatim_state_2q(theta0, -phi0, k_r, k_theta, n);
    let g = cis(-lit::<T>(n as f64) * k_r / two);
    s.c.iter_mut().for_each(|c| *c = *c * g);
    s
}

/// Standard top (`k' = 0`).
pub fn exact_state_2q<T: Real>(theta0: T, phi0: T, k: T, n: u64) -> CoefficientSet2Q<T> {
    exact_state_2q_double(theta0, phi0, k, T::zero(), n)
}

/// `S = 1/2 − 2(Re[c₀c₂*]² + Im[c₀c₁*]² + Re[c₁c₂*]²)`.
pub fn entropy_2q<T: Real>(s: &CoefficientSet2Q<T>) -> T {
    let [c0, c1, c2] = s.c;
    let a = (c0 * c2.conj()).re;
    let b = (c0 * c1.conj()).im;
    let c = (c1 * c2.conj()).re;
    lit::<T>(0.5) - lit::<T>(2.0) * (a * a + b * b + c * c)
}

pub fn exact_entropy_2q<T: Real>(theta0: T, phi0: T, k: T, n: u64) -> T {
    entropy_2q(&exact_state_2q(theta0, phi0, k, n))
}

/// Infinite-time average for any initial state, in the matrix convention.
pub fn avg_entropy_2q<T: Real>(theta0: T, phi0: T, k: T) -> T {
    let l = |x: f64| lit::<T>(x);
    let (c2t, c4t) = ((l(2.0) * theta0).cos(), (l(4.0) * theta0).cos());
    let st = theta0.sin();
    let a = (l(106.0) + l(8.0) * c2t + l(14.0) * c4t + (l(2.0) * c4t - l(8.0) * c2t + l(6.0)) * (l(4.0) * phi0).cos()) / l(1024.0);
    let b = (l(3.0) + c2t + l(2.0) * (l(2.0) * phi0).cos() * st * st).powi(2) / l(128.0);
    let c = k.sin() * st * (l(2.0) * theta0).sin() * (l(2.0) * phi0).sin() / l(16.0);
    let d = l(32.0) * k.cos() * st * st * ((l(2.0) * phi0).cos() * (l(3.0) + c2t) - l(2.0) * st * st) / l(1024.0);
    a + b + c + d
}

/// `S` at `(0, 0)`: `½ sin²((n+1)k/4)` for odd `n`, `½ sin²(nk/4)` for even `n`.
pub fn s00_2q<T: Real>(k: T, n: u64) -> T {
    let m = if n % 2 == 1 { n + 1 } else { n };
    lit::<T>(0.5) * (lit::<T>(m as f64) * k / lit(4.0)).sin().powi(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalised() {
        for n in 0..9 {
            let s = exact_state_2q(0.7_f64, -1.1, 2.3, n);
            assert!((s.norm_sqr() - 1.0).abs() < 1e-14);
            let s = exact_state_2q(0.7_f32, -1.1, 2.3, n);
            assert!((s.norm_sqr() - 1.0).abs() < 1e-5);
        }
    }

    #[test]
    fn pole_state_matches_display() {
        // |ψ_n⟩ = [cos(nπ/2), e^{ik/4} sin(nπ/2), e^{−ink/4}] / √2.
        let k = 1.3_f64;
        for n in 0..8 {
            let s = verbatim_state_2q(0.0, 0.0, k / 2.0, k / 2.0, n);
            let (cn, sn) = quarter_turn::<f64>(n);
            let h = std::f64::consts::FRAC_1_SQRT_2;
            let want = [re(cn * h), cis(k / 4.0) * sn * h, cis(-(n as f64) * k / 4.0) * h];
            for (a, b) in s.c.iter().zip(want) {
                assert!((a - b).norm() < 1e-14, "n={n}");
            }
        }
    }
}
