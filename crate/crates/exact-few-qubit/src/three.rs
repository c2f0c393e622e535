use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::{cis, im, lit, re, sign, Real, Result, SpecialState};

/// `cos γ = ½ sin(k/3)`, `sin θ = √3 / (2 sin γ)`, `χ = k/3 + π/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotationAngles3Q<T> {
    pub gamma: T,
    pub theta: T,
    pub chi: T,
}

pub fn rotation_angles_3q<T: Real>(k: T) -> RotationAngles3Q<T> {
    let gamma = (lit::<T>(0.5) * (k / lit(3.0)).sin()).acos();
    let s = (lit::<T>(3.0).sqrt() / (lit::<T>(2.0) * gamma.sin())).min(T::one());
    RotationAngles3Q { gamma, theta: s.asin(), chi: k / lit(3.0) + T::FRAC_PI_2() }
}

/// `α_n, β_n` with `cos γ = ½ sin(k/d)`; `d = 3` for three qubits, `d = 2` for four.
pub(crate) fn alpha_beta<T: Real>(k: T, d: T, n: u64) -> (Complex<T>, Complex<T>) {
    let kd = k / d;
    let gamma = (lit::<T>(0.5) * kd.sin()).acos();
    let nf = lit::<T>(n as f64);
    let (sn, cn) = (nf * gamma).sin_cos();
    let r = sn / gamma.sin();
    let alpha = Complex::new(cn, lit::<T>(0.5) * r * kd.cos());
    let beta = cis(kd) * (lit::<T>(3.0).sqrt() / lit(2.0) * r);
    (alpha, beta)
}

/// `c' = [Φ₀⁺, Φ₁⁺, Φ₀⁻, Φ₁⁻]` at `j = 3/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSet3Q<T> {
    pub c: [Complex<T>; 4],
    pub alpha: Complex<T>,
    pub beta: Complex<T>,
    pub n: u64,
}

impl<T: Real> CoefficientSet3Q<T> {
    pub fn norm_sqr(&self) -> T {
        self.c.iter().fold(T::zero(), |s, c| s + c.norm_sqr())
    }
}

/// Printed `c'` formulas with the printed prefactor `c_f`.
pub fn verbatim_state_3q<T: Real>(theta0: T, phi0: T, k: T, n: u64) -> CoefficientSet3Q<T> {
    let l = |x: f64| lit::<T>(x);
    let (a, b) = alpha_beta(k, l(3.0), n);
    let s3 = l(3.0).sqrt();
    let (st, ct) = theta0.sin_cos();
    let (sp, cp) = phi0.sin_cos();
    let cf = Complex::new(((theta0 + phi0) / l(2.0)).cos(), -((theta0 - phi0) / l(2.0)).sin()) / (l(2.0) * l(2.0).sqrt());
    let npi = l(n as f64) * T::PI();
    let e1 = cis(-(npi + l(6.0) * phi0) / l(4.0)) * cf;
    let e2 = cis((l(5.0) * npi - l(6.0) * phi0) / l(4.0)) * cf.conj();
    let cc = l(2.0) * ct * cp;
    let c0 = e1 * (a * cc - b.conj() * (s3 * st) + im(T::one()) * a * (st + l(2.0) * sp));
    let c1 = e1 * (b * cc + a.conj() * (s3 * st) + im(T::one()) * a * (st + l(2.0) * sp));
    let c2 = e2 * (a * cc + b.conj() * (s3 * st) - im(T::one()) * a * (st - l(2.0) * sp));
    let c3 = -e2 * (b * cc - a.conj() * (s3 * st) - im(T::one()) * b * (st - l(2.0) * sp));
    CoefficientSet3Q { c: [c0, c1, c2, c3], alpha: a, beta: b, n }
}

/// Printed Φ-basis expansion of the initial state (printed φ convention).
pub(crate) fn psi0_3q<T: Real>(theta0: T, phi0: T) -> [Complex<T>; 4] {
    let l = |x: f64| lit::<T>(x);
    let (s, c) = (theta0 / l(2.0)).sin_cos();
    let h = T::one() / l(2.0).sqrt();
    let e3 = cis(-l(3.0) * phi0) * (s * s * s);
    let c3 = re(c * c * c);
    // √(3/8) e^{−2iφ} sin(θ/2) sin θ (e^{iφ} cot(θ/2) ∓ i), with sin(θ/2) cot(θ/2) = cos(θ/2).
    let w = cis(-l(2.0) * phi0) * (l(0.375).sqrt() * theta0.sin());
    let u = cis(phi0) * c;
    [(c3 + im(T::one()) * e3) * h, w * (u - im(s)), (c3 - im(T::one()) * e3) * h, w * (u + im(s))]
}

/// Oracle-corrected coefficients: `U_±ⁿ` applied to the initial state in the
/// parity basis `Φ₀^± = (|000⟩ ∓ i|111⟩)/√2`, `Φ₁^± = (|W⟩ ± i|W̄⟩)/√2`.
pub fn exact_state_3q<T: Real>(theta0: T, phi0: T, k: T, n: u64) -> CoefficientSet3Q<T> {
    let l = |x: f64| lit::<T>(x);
    let (a, b) = alpha_beta(k, l(3.0), n);
    let p = psi0_3q(theta0, -phi0);
    let nf = l(n as f64);
    let global = cis(-nf * k / l(4.0) - nf * k / l(6.0));
    let quarter = nf * T::PI() / l(4.0);
    let gp = global * cis(-quarter);
    let gm = global * cis(quarter) * sign::<T>(n);
    let c0 = gp * (a * p[0] - b.conj() * p[1]);
    let c1 = gp * (b * p[0] + a.conj() * p[1]);
    let c2 = gm * (a * p[2] + b.conj() * p[3]);
    let c3 = gm * (-b * p[2] + a.conj() * p[3]);
    CoefficientSet3Q { c: [c0, c1, c2, c3], alpha: a, beta: b, n }
}

/// `S = ½ − 2(Re[c₀c₂*] + ⅓Re[c₁c₃*])² − 2|a₂ + a₄|²`.
pub fn entropy_3q<T: Real>(s: &CoefficientSet3Q<T>) -> T {
    let l = |x: f64| lit::<T>(x);
    let [c0, c1, c2, c3] = s.c;
    let d = (c0 * c2.conj()).re + (c1 * c3.conj()).re / l(3.0);
    let s3 = l(3.0).sqrt();
    let a24 = -im(T::one() / l(3.0)) * (c1 + c3) * (c1 - c3).conj() + (c0 + c2) * (c1 + c3).conj() * (s3 / l(6.0))
        - (c1 - c3) * (c0 - c2).conj() / (l(2.0) * s3);
    l(0.5) - l(2.0) * d * d - l(2.0) * a24.norm_sqr()
}

pub fn exact_entropy_3q<T: Real>(theta0: T, phi0: T, k: T, n: u64) -> T {
    entropy_3q(&exact_state_3q(theta0, phi0, k, n))
}

/// `S` at `(0, 0)`, piecewise in the parity of `n`.
pub fn s00_3q<T: Real>(k: T, n: u64) -> T {
    let l = |x: f64| lit::<T>(x);
    let (a, b) = alpha_beta(k, l(3.0), n);
    let b2 = b.norm_sqr();
    if n % 2 == 0 {
        l(4.0) / l(9.0) * b2 * (l(3.0) - l(2.0) * b2)
    } else {
        let x = b2 / l(3.0) + (a * b.conj()).im / l(3.0).sqrt();
        l(0.5) - l(2.0) * x * x
    }
}

/// Displayed infinite-time averages of the two special states.
pub fn avg_entropy_3q_special<T: Real>(state: SpecialState, k: T) -> Result<T> {
    let l = |x: f64| lit::<T>(x);
    let s2 = (k / l(3.0)).sin().powi(2);
    let den = (l(4.0) - s2).powi(2);
    Ok(match state {
        SpecialState::Pole => (l(5.0) - l(2.0) * s2) / den,
        SpecialState::Equator => (l(8.0) - l(5.0) * s2) * s2 / den,
    })
}
