use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use nalgebra::{DMatrix, SymmetricEigen};

use crate::{CMatrix, Complex, Spin};

/// `Jx, Jy, Jz` and the ladder operators at one spin.
#[derive(Debug, Clone)]
pub struct AngularMomentumSet {
    pub spin: Spin,
    pub jx: CMatrix,
    pub jy: CMatrix,
    pub jz: CMatrix,
    pub jplus: CMatrix,
    pub jminus: CMatrix,
}

/// `⟨m + 1|J+|m⟩ = √(j(j+1) − m(m+1))`, stored at `[a − 1, a]`.
pub(crate) fn ladder_coeff(spin: Spin, a: usize) -> f64 {
    let j = spin.j();
    let m = spin.m(a);
    (j * (j + 1.0) - m * (m + 1.0)).max(0.0).sqrt()
}

pub fn build_operators(spin: Spin) -> AngularMomentumSet {
    let n = spin.dim();
    let mut jplus = CMatrix::zeros(n, n);
    for a in 1..n {
        jplus[(a - 1, a)] = Complex::new(ladder_coeff(spin, a), 0.0);
    }
    let jminus = jplus.adjoint();
    let jx = (&jplus + &jminus).scale(0.5);
    let jy = (&jplus - &jminus) * Complex::new(0.0, -0.5);
    let jz = CMatrix::from_diagonal(&nalgebra::DVector::from_fn(n, |a, _| Complex::new(spin.m(a), 0.0)));
    AngularMomentumSet { spin, jx, jy, jz, jplus, jminus }
}

/// Real symmetric `Jx` in the `Jz` basis.
pub fn jx_real(spin: Spin) -> DMatrix<f64> {
    let n = spin.dim();
    let mut m = DMatrix::zeros(n, n);
    for a in 1..n {
        let c = 0.5 * ladder_coeff(spin, a);
        m[(a - 1, a)] = c;
        m[(a, a - 1)] = c;
    }
    m
}

/// Orthogonal eigenvectors of `Jx` with eigenvalues snapped to exact `m`.
#[derive(Debug)]
pub(crate) struct JxEigen {
    pub vectors: DMatrix<f64>,
    pub values: Vec<f64>,
}

impl JxEigen {
    /// `V diag(e^{i f(λ)}) Vᵀ`.
    pub fn exp_of(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let n = self.values.len();
        let phases: Vec<Complex> = self.values.iter().map(|&l| Complex::from_polar(1.0, f(l))).collect();
        let v = &self.vectors;
        CMatrix::from_fn(n, n, |a, b| {
            let mut s = Complex::new(0.0, 0.0);
            for c in 0..n {
                s += phases[c] * (v[(a, c)] * v[(b, c)]);
            }
            s
        })
    }
}

fn jx_cache() -> &'static RwLock<HashMap<u32, Arc<JxEigen>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<JxEigen>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

pub(crate) fn jx_eigen(spin: Spin) -> Arc<JxEigen> {
    if let Some(e) = jx_cache().read().expect("jx cache poisoned").get(&spin.qubits()) {
        return e.clone();
    }
    let eig = SymmetricEigen::new(jx_real(spin));
    let j = spin.j();
    let values = eig.eigenvalues.iter().map(|&l| (l + j).round() - j).collect();
    let e = Arc::new(JxEigen { vectors: eig.eigenvectors, values });
    jx_cache().write().expect("jx cache poisoned").entry(spin.qubits()).or_insert(e).clone()
}
