use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::operators::jx_eigen;
use crate::{CMatrix, CVector, Complex, Params, QuantumError, Result, Spin};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Standard,
    DoubleKick,
    MBody,
}

impl Variant {
    pub fn of(params: &Params) -> Result<Self> {
        match (params.k_prime != 0.0, params.m_order != 2) {
            (false, false) => Ok(Variant::Standard),
            (true, false) => Ok(Variant::DoubleKick),
            (false, true) => Ok(Variant::MBody),
            (true, true) => Err(QuantumError::Domain("the double kick is only defined for m_order = 2".into())),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FloquetOperator {
    pub u: CMatrix,
    pub params: Params,
    pub variant: Variant,
    pub spin: Spin,
}

impl FloquetOperator {
    pub fn dim(&self) -> usize {
        self.spin.dim()
    }

    pub fn apply(&self, v: &CVector) -> CVector {
        &self.u * v
    }

    /// `max |U U† − I|`.
    pub fn unitarity_defect(&self) -> f64 {
        let p = &self.u * self.u.adjoint();
        let n = self.dim();
        let mut worst = 0.0_f64;
        for a in 0..n {
            for b in 0..n {
                let want = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((p[(a, b)] - Complex::new(want, 0.0)).norm());
            }
        }
        worst
    }
}

/// Kick phase `k/(m j^{m−1}) · m_z^m` at each basis index.
fn kick_phases(params: &Params, spin: Spin) -> Vec<f64> {
    let j = spin.j();
    let m = params.m_order as i32;
    let c = params.k / (m as f64 * j.powi(m - 1));
    (0..spin.dim()).map(|a| c * spin.m(a).powi(m)).collect()
}

/// `exp(−i p Jy)`, via `Jy = R Jx R†` with `R = exp(−iπJz/2)`.
pub fn rotation_y(p: f64, spin: Spin) -> CMatrix {
    let ex = jx_eigen(spin).exp_of(|l| -p * l);
    let quarter = [Complex::new(1.0, 0.0), Complex::new(0.0, -1.0), Complex::new(-1.0, 0.0), Complex::new(0.0, 1.0)];
    // (−i)^{m_a − m_b} = (−i)^{b − a}
    CMatrix::from_fn(ex.nrows(), ex.ncols(), |a, b| quarter[(b + 4 - a % 4) % 4] * ex[(a, b)])
}

/// `U = [exp(−i k'/(2j) Jx²)] · exp(−i k/(m j^{m−1}) Jz^m) · exp(−i p Jy)`.
pub fn build_floquet(params: &Params, spin: Spin) -> Result<FloquetOperator> {
    params.validate()?;
    let variant = Variant::of(params)?;
    let mut u = rotation_y(params.p, spin);
    for (a, ph) in kick_phases(params, spin).into_iter().enumerate() {
        let f = Complex::from_polar(1.0, -ph);
        u.row_mut(a).iter_mut().for_each(|x| *x *= f);
    }
    if variant == Variant::DoubleKick {
        let c = params.k_prime / (2.0 * spin.j());
        u = jx_eigen(spin).exp_of(|l| -c * l * l) * u;
    }
    let op = FloquetOperator { u, params: *params, variant, spin };
    let defect = op.unitarity_defect();
    if !(defect < 1e-9) {
        return Err(QuantumError::Internal(format!(
            "Floquet operator not unitary: defect {defect:e} at j={}, params {params:?}",
            spin.j()
        )));
    }
    Ok(op)
}

type Key = (u32, [u64; 3], u32);

/// Shared cache of Floquet operators keyed by `(j, params)`.
#[derive(Debug, Default)]
pub struct FloquetCache {
    map: RwLock<HashMap<Key, Arc<FloquetOperator>>>,
}

impl FloquetCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, params: &Params, spin: Spin) -> Result<Arc<FloquetOperator>> {
        let key = (spin.qubits(), [params.k.to_bits(), params.p.to_bits(), params.k_prime.to_bits()], params.m_order);
        if let Some(op) = self.map.read().expect("floquet cache poisoned").get(&key) {
            return Ok(op.clone());
        }
        let op = Arc::new(build_floquet(params, spin)?);
        Ok(self.map.write().expect("floquet cache poisoned").entry(key).or_insert(op).clone())
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("floquet cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{build_operators, max_abs_diff};

    // Taylor series for exp(−iθG), good for small ‖θG‖ after scaling and squaring.
    fn expm(g: &CMatrix, theta: f64) -> CMatrix {
        let n = g.nrows();
        let norm = g.iter().map(|x| x.norm()).sum::<f64>() * theta.abs();
        let s = (norm.log2().ceil().max(0.0) as i32) + 4;
        let a = g * Complex::new(0.0, -theta / 2f64.powi(s));
        let mut term = CMatrix::identity(n, n);
        let mut sum = term.clone();
        for i in 1..30 {
            term = &term * &a / Complex::new(i as f64, 0.0);
            sum += &term;
        }
        for _ in 0..s {
            sum = &sum * &sum;
        }
        sum
    }

    #[test]
    fn rotation_matches_taylor_exponential() {
        for j in [0.5, 1.0, 2.5, 4.0] {
            let spin = Spin::new(j).unwrap();
            let ops = build_operators(spin);
            for p in [0.3, std::f64::consts::FRAC_PI_2, 2.9] {
                assert!(max_abs_diff(&rotation_y(p, spin), &expm(&ops.jy, p)) < 1e-12);
            }
        }
    }

    #[test]
    fn double_kick_matches_taylor_exponential() {
        let spin = Spin::new(3.0).unwrap();
        let ops = build_operators(spin);
        let prm = Params::standard(2.0, 0.7).with_k_prime(1.3);
        let want = expm(&(&ops.jx * &ops.jx), 1.3 / 6.0) * expm(&(&ops.jz * &ops.jz), 2.0 / 6.0) * expm(&ops.jy, 0.7);
        assert!(max_abs_diff(&build_floquet(&prm, spin).unwrap().u, &want) < 1e-11);
    }

    #[test]
    fn variant_selection() {
        assert_eq!(Variant::of(&Params::kicked(1.0)).unwrap(), Variant::Standard);
        assert_eq!(Variant::of(&Params::kicked(1.0).with_k_prime(0.5)).unwrap(), Variant::DoubleKick);
        assert_eq!(Variant::of(&Params::kicked(1.0).with_m_order(3)).unwrap(), Variant::MBody);
        assert!(Variant::of(&Params::kicked(1.0).with_m_order(3).with_k_prime(0.5)).is_err());
    }

    #[test]
    fn cache_reuses_operators() {
        let c = FloquetCache::new();
        let s = Spin::new(2.0).unwrap();
        let a = c.get(&Params::kicked(1.0), s).unwrap();
        let b = c.get(&Params::kicked(1.0), s).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        c.get(&Params::kicked(1.5), s).unwrap();
        assert_eq!(c.len(), 2);
    }
}
