
use crate::operators::ladder_coeff;
use crate::{CVector, Complex, FloquetOperator, QuantumError, Result, Spin};

/// Amplitudes over `m = j, j−1, …, −j`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinState {
    pub spin: Spin,
    pub amplitudes: CVector,
}

impl SpinState {
    pub fn new(spin: Spin, amplitudes: CVector) -> Result<Self> {
        if amplitudes.len() != spin.dim() {
            return Err(QuantumError::Domain(format!(
                "state has {} amplitudes, spin {} needs {}",
                amplitudes.len(),
                spin.j(),
                spin.dim()
            )));
        }
        Ok(Self { spin, amplitudes })
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// `|⟨self|other⟩|`.
    pub fn overlap(&self, other: &SpinState) -> f64 {
        self.amplitudes.dotc(&other.amplitudes).norm()
    }

    /// `(⟨Jx⟩, ⟨Jy⟩, ⟨Jz⟩)` in O(N).
    pub fn expect_j(&self) -> [f64; 3] {
        let c = &self.amplitudes;
        let mut jz = 0.0;
        let mut jp = Complex::new(0.0, 0.0);
        for a in 0..c.len() {
            jz += self.spin.m(a) * c[a].norm_sqr();
            if a > 0 {
                jp += c[a - 1].conj() * c[a] * ladder_coeff(self.spin, a);
            }
        }
        [jp.re, jp.im, jz]
    }
}

/// Spin-coherent state pointing along `(θ₀, φ₀)`.
///
/// Amplitude at `q = j − m` is `cos^{2j−q}(θ₀/2) (e^{iφ₀} sin(θ₀/2))^q √C(2j, q)`,
/// evaluated in logs so large `j` does not overflow.
pub fn coherent_state(theta0: f64, phi0: f64, spin: Spin) -> Result<SpinState> {
    if !(0.0..=std::f64::consts::PI).contains(&theta0) || !phi0.is_finite() {
        return Err(QuantumError::Domain(format!("need θ₀ ∈ [0, π] and finite φ₀, got ({theta0}, {phi0})")));
    }
    let n = spin.qubits() as usize;
    let mut amp = CVector::zeros(n + 1);
    if theta0 == 0.0 {
        amp[0] = Complex::new(1.0, 0.0);
    } else if theta0 == std::f64::consts::PI {
        amp[n] = Complex::from_polar(1.0, n as f64 * phi0);
    } else {
        let (s, c) = (theta0 / 2.0).sin_cos();
        let (ls, lc) = (s.ln(), c.ln());
        let mut ln_binom = 0.0;
        for q in 0..=n {
            if q > 0 {
                ln_binom += ((n - q + 1) as f64 / q as f64).ln();
            }
            let mag = (0.5 * ln_binom + (n - q) as f64 * lc + q as f64 * ls).exp();
            amp[q] = Complex::from_polar(mag, q as f64 * phi0);
        }
        let norm = amp.norm();
        amp /= Complex::new(norm, 0.0);
    }
    Ok(SpinState { spin, amplitudes: amp })
}

fn check_dim(u: &FloquetOperator, state: &SpinState) -> Result<()> {
    if u.spin != state.spin {
        return Err(QuantumError::Domain(format!("operator at j={} applied to state at j={}", u.spin.j(), state.spin.j())));
    }
    Ok(())
}

/// `Uⁿ ψ` by repeated matrix-vector products.
pub fn evolve(u: &FloquetOperator, state: &SpinState, n: usize) -> Result<SpinState> {
    check_dim(u, state)?;
    let mut cur = state.amplitudes.clone();
    let mut next = cur.clone();
    for _ in 0..n {
        next.gemv(Complex::new(1.0, 0.0), &u.u, &cur, Complex::new(0.0, 0.0));
        std::mem::swap(&mut cur, &mut next);
    }
    Ok(SpinState { spin: state.spin, amplitudes: cur })
}

/// `ψ, Uψ, …, Uⁿψ`.
pub fn evolve_trajectory(u: &FloquetOperator, state: &SpinState, n: usize) -> Result<Vec<SpinState>> {
    check_dim(u, state)?;
    let mut out = Vec::with_capacity(n + 1);
    out.push(state.clone());
    for i in 0..n {
        let next = u.apply(&out[i].amplitudes);
        out.push(SpinState { spin: state.spin, amplitudes: next });
    }
    Ok(out)
}
