use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::three::alpha_beta;
use crate::{cis, im, lit, quarter_turn, re, sign, Real, Result, SpecialState};

/// `c'' = [Φ₀⁺, Φ₁⁺, Φ₂⁺, Φ₀⁻, Φ₁⁻]` at `j = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSet4Q<T> {
    pub c: [Complex<T>; 5],
    pub alpha: Complex<T>,
    pub beta: Complex<T>,
    pub n: u64,
}

impl<T: Real> CoefficientSet4Q<T> {
    pub fn norm_sqr(&self) -> T {
        self.c.iter().fold(T::zero(), |s, c| s + c.norm_sqr())
    }
}

/// Printed Φ-basis expansion of the initial state (printed φ convention).
pub(crate) fn psi0_4q<T: Real>(theta0: T, phi0: T) -> [Complex<T>; 5] {
    let l = |x: f64| lit::<T>(x);
    let (s, c) = (theta0 / l(2.0)).sin_cos();
    let (st, ct) = theta0.sin_cos();
    let (sp, cp) = phi0.sin_cos();
    let h = T::one() / l(2.0).sqrt();
    let c4 = re(c.powi(4));
    let s4 = cis(-l(4.0) * phi0) * s.powi(4);
    let e = cis(-l(2.0) * phi0);
    [
        (c4 + s4) * h,
        e * Complex::new(ct * cp, sp) * (st * h),
        e * (l(0.375).sqrt() * st * st),
        (c4 - s4) * h,
        e * Complex::new(cp, ct * sp) * (st * h),
    ]
}

/// Printed `c''` formulas.
pub fn verbatim_state_4q<T: Real>(theta0: T, phi0: T, k: T, n: u64) -> CoefficientSet4Q<T> {
    let l = |x: f64| lit::<T>(x);
    let (a, b) = alpha_beta(k, l(2.0), n);
    let s3 = l(3.0).sqrt();
    let h = T::one() / l(2.0).sqrt();
    let (s, c) = (theta0 / l(2.0)).sin_cos();
    let (st, ct) = theta0.sin_cos();
    let (sp, cp) = phi0.sin_cos();
    let nf = l(n as f64);
    let (cn, sn) = quarter_turn::<T>(n);
    let e1 = cis(-(nf * k / l(2.0) + nf * T::PI() + l(8.0) * phi0) / l(2.0)) * (h / l(2.0));
    let c4 = c.powi(4);
    let s4 = s.powi(4);
    let c0 = e1 * (a * (re(c4) + cis(-l(4.0) * phi0) * s4) * l(2.0) + im(s3) * cis(l(2.0) * phi0) * b.conj() * (st * st));
    let c1 = cis(-l(2.0) * phi0) * Complex::new(ct * cp, sp) * (sign::<T>(n) * h * st);
    let c2 = e1 * (im(l(2.0)) * b * (cis(l(4.0) * phi0) * c4 + re(s4)) + cis(l(2.0) * phi0) * b.conj() * (s3 * st * st));
    let tail = Complex::new(cp, ct * sp) * st;
    let c3 = cis(-(l(1.5) * k * (nf + T::one()) + l(16.0) * phi0) / l(4.0))
        * h
        * (cis(l(3.0) * k / l(8.0)) * cn * (cis(l(4.0) * phi0) * c4 - re(s4)) - cis(l(2.0) * phi0) * tail * sn);
    let c4c = cis(-l(3.0) * nf * k / l(8.0))
        * h
        * (cis(l(3.0) * k / l(8.0)) * cn * (re(c4) - cis(-l(4.0) * phi0) * s4) + cis(-l(2.0) * phi0) * tail * cn);
    CoefficientSet4Q { c: [c0, c1, c2, c3, c4c], alpha: a, beta: b, n }
}

/// Oracle-corrected coefficients: the block powers applied to the initial state.
///
/// `U₊ⁿ = e^{−in(k+2π)/4} [[α', iβ'*], [iβ', α'*]]` on `(Φ₀⁺, Φ₂⁺)`, `(−1)ⁿ` on
/// `Φ₁⁺`, and `U₋ⁿ = e^{−3ink/8} [[cos, −sin e^{−3ik/8}], [sin e^{3ik/8}, cos]]`
/// (angles `nπ/2`) on `(Φ₀⁻, Φ₁⁻)`, all times `e^{−ink/4}`.
pub fn exact_state_4q<T: Real>(theta0: T, phi0: T, k: T, n: u64) -> CoefficientSet4Q<T> {
    let l = |x: f64| lit::<T>(x);
    let (a, b) = alpha_beta(k, l(2.0), n);
    let p = psi0_4q(theta0, -phi0);
    let nf = l(n as f64);
    let g = cis(-nf * k / l(4.0));
    let gp = g * cis(-nf * (k + l(2.0) * T::PI()) / l(4.0));
    let i = im(T::one());
    let c0 = gp * (a * p[0] + i * b.conj() * p[2]);
    let c2 = gp * (i * b * p[0] + a.conj() * p[2]);
    let c1 = g * p[1] * sign::<T>(n);
    let (cn, sn) = quarter_turn::<T>(n);
    let gm = g * cis(-l(3.0) * nf * k / l(8.0));
    let e = cis(l(3.0) * k / l(8.0));
    let c3 = gm * (p[3] * cn - e.conj() * p[4] * sn);
    let c4 = gm * (e * p[3] * sn + p[4] * cn);
    CoefficientSet4Q { c: [c0, c1, c2, c3, c4], alpha: a, beta: b, n }
}

fn p12<T: Real>(c: &[Complex<T>; 5]) -> Complex<T> {
    let l = |x: f64| lit::<T>(x);
    let [c0, c1, c2, c3, c4] = *c;
    ((c1 - c4) * (c3 - c0).conj() + (c0 + c3) * (c1 + c4).conj()) / l(4.0)
        + (c2 * (c4 - c1).conj() + c2.conj() * (c4 + c1)) * (l(3.0).sqrt() / l(4.0))
}

/// Printed `S⁴` (diagonal term `Re[c₀c₂*] + Re[c₁c₄*]`).
pub fn verbatim_entropy_4q<T: Real>(s: &CoefficientSet4Q<T>) -> T {
    let l = |x: f64| lit::<T>(x);
    let c = &s.c;
    let d = (c[0] * c[2].conj()).re + (c[1] * c[4].conj()).re;
    l(0.5) - l(2.0) * d * d - l(2.0) * p12(c).norm_sqr()
}

/// Corrected `S⁴`, diagonal term `Re[c₀c₃*] + ½Re[c₁c₄*]`.
pub fn entropy_4q<T: Real>(s: &CoefficientSet4Q<T>) -> T {
    let l = |x: f64| lit::<T>(x);
    let c = &s.c;
    let d = (c[0] * c[3].conj()).re + (c[1] * c[4].conj()).re / l(2.0);
    l(0.5) - l(2.0) * d * d - l(2.0) * p12(c).norm_sqr()
}

pub fn exact_entropy_4q<T: Real>(theta0: T, phi0: T, k: T, n: u64) -> T {
    entropy_4q(&exact_state_4q(theta0, phi0, k, n))
}

/// `(Re[α'δ*], R, ψ)` shared by the `(0, 0)` forms, with `R = sin nγ / sin γ`, `ψ = (n − 3)k/8`.
fn s00_parts<T: Real>(k: T, n: u64) -> (T, T, T, T) {
    let l = |x: f64| lit::<T>(x);
    let nf = l(n as f64);
    let gamma = (l(0.5) * (k / l(2.0)).sin()).acos();
    let r = (nf * gamma).sin() / gamma.sin();
    let cg = (nf * gamma).cos();
    let re_ad = (nf * k / l(8.0)).cos() * cg - l(0.5) * r * (nf * k / l(8.0)).sin() * (k / l(2.0)).cos();
    (re_ad, r, cg, (nf - l(3.0)) * k / l(8.0))
}

/// Printed `(0, 0)` form.
pub fn verbatim_s00_4q<T: Real>(k: T, n: u64) -> T {
    let l = |x: f64| lit::<T>(x);
    let (re_ad, r, cg, psi) = s00_parts(k, n);
    let re_eps = -psi.cos() * (l(1.5) * (k / l(2.0)).sin() * r - cg) - l(2.0) * r * (k / l(2.0)).cos() * psi.sin();
    let cnp = sign::<T>(n);
    l(0.5) - (T::one() + cnp) / l(4.0) * re_ad * re_ad + (cnp - T::one()) / l(16.0) * re_eps * re_eps
}

/// Corrected `(0, 0)` form: the odd-`n` term is `sin ψ (cos nγ − 1.5 sin(k/2) R) + 2R cos(k/2) cos ψ`.
pub fn s00_4q<T: Real>(k: T, n: u64) -> T {
    let l = |x: f64| lit::<T>(x);
    let (re_ad, r, cg, psi) = s00_parts(k, n);
    if n % 2 == 0 {
        l(0.5) - l(0.5) * re_ad * re_ad
    } else {
        let x = psi.sin() * (cg - l(1.5) * (k / l(2.0)).sin() * r) + l(2.0) * r * (k / l(2.0)).cos() * psi.cos();
        l(0.5) - x * x / l(8.0)
    }
}

/// Displayed infinite-time averages of the two special states.
pub fn avg_entropy_4q_special<T: Real>(state: SpecialState, k: T) -> Result<T> {
    let l = |x: f64| lit::<T>(x);
    let c2 = (k / l(2.0)).cos().powi(2);
    Ok(match state {
        SpecialState::Pole => (l(9.0) + l(2.0) * c2) / (l(8.0) * (l(3.0) + c2)),
        SpecialState::Equator => (l(9.0) - c2) / (l(8.0) * (l(3.0) + c2)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corrected_state_is_normalised() {
        for n in [0, 1, 2, 5, 77] {
            let s = exact_state_4q(0.9_f64, 2.1, 1.7, n);
            assert!((s.norm_sqr() - 1.0).abs() < 1e-13);
            assert!((s.alpha.norm_sqr() + s.beta.norm_sqr() - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn corrected_pole_form_reduces_to_printed_for_even_n() {
        for n in [0, 2, 4, 10, 36] {
            assert!((s00_4q(1.3_f64, n) - verbatim_s00_4q(1.3_f64, n)).abs() < 1e-15);
        }
    }
}
