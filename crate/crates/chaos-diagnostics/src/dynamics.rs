use serde::{Deserialize, Serialize};
use spin_quantum::{build_floquet, CMatrix, FloquetOperator, Params, SpinState};

use crate::eigvec::Observable;
use crate::stats::linear_fit;
use crate::{DiagnosticsError, Result};

const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OtocCurve {
    pub times: Vec<usize>,
    pub values: Vec<f64>,
    pub observable: String,
    /// `A(t) = U^{−t} A Uᵗ`.
    pub convention: String,
}

/// `C(t) = ½ ‖[A(t), A]‖²_F / N`, i.e. `−½ Tr(ρ [A(t), A]²)` at `ρ = I/N`.
pub fn otoc_matrix(u: &CMatrix, a: &CMatrix, t_max: usize) -> Result<Vec<f64>> {
    let n = u.nrows();
    if a.nrows() != n || a.ncols() != n {
        return Err(DiagnosticsError::Domain("observable and operator differ in dimension".into()));
    }
    let skew = a.iter().zip(a.adjoint().iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    if skew > HERMITIAN_TOL {
        return Err(DiagnosticsError::Precondition(format!("observable not Hermitian: {skew:e}")));
    }
    let ud = u.adjoint();
    let mut at = a.clone();
    let mut out = Vec::with_capacity(t_max + 1);
    for t in 0..=t_max {
        if t > 0 {
            at = &ud * &at * u;
        }
        let c = &at * a - a * &at;
        out.push(0.5 * c.norm_squared() / n as f64);
    }
    Ok(out)
}

pub fn otoc(u: &FloquetOperator, observable: Observable, t_max: usize) -> Result<OtocCurve> {
    let values = otoc_matrix(&u.u, &observable.matrix(u.spin), t_max)?;
    Ok(OtocCurve {
        times: (0..=t_max).collect(),
        values,
        observable: observable.name().into(),
        convention: "A(t) = U^-t A U^t".into(),
    })
}

/// First `t` with `C(t) ≥ frac ×` the mean of the second half of the curve.
pub fn saturation_onset(values: &[f64], frac: f64) -> Option<usize> {
    if values.len() < 2 {
        return None;
    }
    let tail = &values[values.len() / 2..];
    let sat = tail.iter().sum::<f64>() / tail.len() as f64;
    values.iter().position(|&c| c >= frac * sat)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EchoCurve {
    pub times: Vec<usize>,
    pub values: Vec<f64>,
    pub k: f64,
    pub delta_k: f64,
}

/// `M(t) = |⟨ψ₀| U(k+δk)^{−t} U(k)ᵗ |ψ₀⟩|²`.
pub fn loschmidt_echo(params: &Params, delta_k: f64, state: &SpinState, t_max: usize) -> Result<EchoCurve> {
    if !delta_k.is_finite() {
        return Err(DiagnosticsError::Domain(format!("δk = {delta_k}")));
    }
    let u0 = build_floquet(params, state.spin)?;
    let u1 = build_floquet(&Params { k: params.k + delta_k, ..*params }, state.spin)?;
    let mut a = state.amplitudes.clone();
    let mut b = a.clone();
    let norm = a.norm_squared();
    let mut values = Vec::with_capacity(t_max + 1);
    for t in 0..=t_max {
        if t > 0 {
            a = &u0.u * &a;
            b = &u1.u * &b;
        }
        values.push((b.dotc(&a).norm_sqr() / (norm * norm)).clamp(0.0, 1.0));
    }
    Ok(EchoCurve { times: (0..=t_max).collect(), values, k: params.k, delta_k })
}

/// Linear fits of `ln M` against `t` and `t²` over the pre-saturation window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EchoFit {
    /// Last `t` in the window: the curve has not yet fallen below `floor`.
    pub window_end: usize,
    pub floor: f64,
    pub exp_rate: f64,
    pub exp_r2: f64,
    pub gauss_rate: f64,
    pub gauss_r2: f64,
}

/// Fits up to the first `t` where `M < floor_factor / dim`, or the whole curve.
pub fn fit_echo(curve: &EchoCurve, dim: usize, floor_factor: f64) -> Result<EchoFit> {
    let floor = floor_factor / dim as f64;
    let end = curve.values.iter().position(|&m| m < floor).map_or(curve.values.len(), |i| i);
    if end < 3 {
        return Err(DiagnosticsError::Precondition(format!("only {end} points before the floor")));
    }
    let t: Vec<f64> = (0..end).map(|i| curve.times[i] as f64).collect();
    let t2: Vec<f64> = t.iter().map(|x| x * x).collect();
    let y: Vec<f64> = curve.values[..end].iter().map(|m| m.max(f64::MIN_POSITIVE).ln()).collect();
    let (a, _, ra) = linear_fit(&t, &y);
    let (b, _, rb) = linear_fit(&t2, &y);
    Ok(EchoFit { window_end: end - 1, floor, exp_rate: -a, exp_r2: ra, gauss_rate: -b, gauss_r2: rb })
}

#[cfg(test)]
mod tests {
    use super::*;
    use spin_quantum::{coherent_state, Spin};

    #[test]
    fn otoc_zero_at_t0_and_rejects_non_hermitian() {
        let u = build_floquet(&Params::kicked(3.0), Spin::new(5.0).unwrap()).unwrap();
        let c = otoc(&u, Observable::JzOverJ, 5).unwrap();
        assert_eq!(c.values[0], 0.0);
        assert!(c.values.iter().all(|&x| x >= 0.0));
        let mut bad = Observable::JzOverJ.matrix(u.spin);
        bad[(0, 1)] = spin_quantum::Complex::new(0.0, 1.0);
        assert!(otoc_matrix(&u.u, &bad, 3).is_err());
    }

    #[test]
    fn echo_without_perturbation() {
        let s = coherent_state(1.0, 0.3, Spin::new(10.0).unwrap()).unwrap();
        let e = loschmidt_echo(&Params::kicked(6.0), 0.0, &s, 40).unwrap();
        assert!(e.values.iter().all(|&m| (m - 1.0).abs() < 1e-12));
    }

    #[test]
    fn onset() {
        assert_eq!(saturation_onset(&[0.0, 0.2, 0.6, 1.0, 1.0, 1.0], 0.5), Some(2));
        assert_eq!(saturation_onset(&[0.0], 0.5), None);
    }
}
