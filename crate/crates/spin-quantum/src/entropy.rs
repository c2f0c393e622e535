use classical_top::{Grid, GridSpec};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{coherent_state, linear_entropy, single_qubit_rdm, Complex, FloquetOperator, QuantumError, Result, SpinState};

/// Default number of kicks standing in for the infinite-time average.
pub const DEFAULT_N_MAX: usize = 1000;

/// Converged when the full and half-length means differ by less than this.
const CONVERGENCE_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AveragedEntropy {
    /// Mean of `S(n)` over `n = 1..=n_max`.
    pub value: f64,
    /// Mean over `n = 1..=n_max/2`.
    pub half_value: f64,
    pub converged: bool,
    pub n_max: usize,
}

/// `S(0), S(1), …, S(n)`.
pub fn entropy_series(u: &FloquetOperator, state: &SpinState, n: usize) -> Result<Vec<f64>> {
    if u.spin != state.spin {
        return Err(QuantumError::Domain("operator and state have different j".into()));
    }
    let mut cur = state.amplitudes.clone();
    let mut next = cur.clone();
    let mut out = Vec::with_capacity(n + 1);
    let mut st = SpinState { spin: state.spin, amplitudes: cur.clone() };
    out.push(linear_entropy(&single_qubit_rdm(&st)));
    for _ in 0..n {
        next.gemv(Complex::new(1.0, 0.0), &u.u, &cur, Complex::new(0.0, 0.0));
        std::mem::swap(&mut cur, &mut next);
        st.amplitudes.copy_from(&cur);
        out.push(linear_entropy(&single_qubit_rdm(&st)));
    }
    Ok(out)
}

/// Time-averaged linear entropy of the coherent state at `(θ₀, φ₀)`, excluding `n = 0`.
pub fn averaged_entropy(u: &FloquetOperator, theta0: f64, phi0: f64, n_max: usize) -> Result<AveragedEntropy> {
    if n_max == 0 {
        return Err(QuantumError::Precondition("n_max must be at least 1".into()));
    }
    let psi = coherent_state(theta0, phi0, u.spin)?;
    let s = entropy_series(u, &psi, n_max)?;
    let half = (n_max / 2).max(1);
    let value = s[1..].iter().sum::<f64>() / n_max as f64;
    let half_value = s[1..=half].iter().sum::<f64>() / half as f64;
    Ok(AveragedEntropy { value, half_value, converged: (value - half_value).abs() < CONVERGENCE_TOL, n_max })
}

/// Averaged entropy over a `(θ₀, φ₀)` grid; cells run in parallel, output order is fixed.
pub fn entropy_landscape(u: &FloquetOperator, spec: GridSpec, n_max: usize) -> Result<Grid<f64>> {
    let values = (0..spec.len())
        .into_par_iter()
        .map(|idx| {
            let (t, p) = spec.cell::<f64>(idx);
            averaged_entropy(u, t, p, n_max).map(|a| a.value)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Grid { spec, values })
}
