use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::jacobian::{full_jacobian, mat_vec, tangent_basis};
use crate::map::step_raw;
use crate::{lit, ClassicalError, Grid, GridSpec, Real, Result, SpherePoint, TopParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LyapunovConfig {
    /// Kicks between tangent-vector rescalings.
    pub renorm_interval: usize,
    /// Raw estimates below `-clip_threshold` are flagged.
    pub clip_threshold: f64,
}

impl Default for LyapunovConfig {
    fn default() -> Self {
        Self { renorm_interval: 10, clip_threshold: 1e-3 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LyapunovEstimate<T> {
    /// Reported exponent, never negative.
    pub lambda: T,
    /// Estimate before clipping.
    pub raw: T,
    /// Set when `raw < -clip_threshold`.
    pub clipped: bool,
}

/// Largest Lyapunov exponent per kick from the tangent-map product.
pub fn lyapunov<T: Real>(
    pt: &SpherePoint<T>,
    params: &TopParams<T>,
    n: usize,
    cfg: &LyapunovConfig,
) -> Result<LyapunovEstimate<T>> {
    if n < 100 {
        return Err(ClassicalError::Precondition(format!("need at least 100 iterations, got {n}")));
    }
    if cfg.renorm_interval == 0 {
        return Err(ClassicalError::Precondition("renorm_interval must be positive".into()));
    }
    if !pt.is_finite() {
        return Err(ClassicalError::Domain(format!("non-finite point {pt:?}")));
    }
    params.validate()?;
    let mut x = pt.normalized();
    let (mut d, _) = tangent_basis(&x);
    let mut log_sum = T::zero();
    for i in 1..=n {
        d = mat_vec(&full_jacobian(&x, params), &d);
        x = step_raw(&x, params).normalized();
        if i % cfg.renorm_interval == 0 || i == n {
            // Drop the normal component picked up by rounding.
            d = d.sub(&x.scale(d.dot(&x)));
            let norm = d.norm();
            log_sum = log_sum + norm.ln();
            d = d.scale(norm.recip());
        }
    }
    Ok(finish(log_sum / lit(n as f64), cfg))
}

fn finish<T: Real>(raw: T, cfg: &LyapunovConfig) -> LyapunovEstimate<T> {
    LyapunovEstimate {
        lambda: raw.max(T::zero()),
        raw,
        clipped: raw < -lit::<T>(cfg.clip_threshold),
    }
}

/// Two-trajectory (Benettin) estimate with separation reset to `d0` each kick.
pub fn lyapunov_two_trajectory<T: Real>(
    pt: &SpherePoint<T>,
    params: &TopParams<T>,
    n: usize,
    d0: T,
) -> Result<LyapunovEstimate<T>> {
    if n < 100 {
        return Err(ClassicalError::Precondition(format!("need at least 100 iterations, got {n}")));
    }
    params.validate()?;
    let mut x = pt.normalized();
    let (e1, _) = tangent_basis(&x);
    let mut y = x.add(&e1.scale(d0)).normalized();
    let mut log_sum = T::zero();
    for _ in 0..n {
        x = step_raw(&x, params).normalized();
        y = step_raw(&y, params).normalized();
        let sep = y.sub(&x);
        let d = sep.norm();
        log_sum = log_sum + (d / d0).ln();
        y = x.add(&sep.scale(d0 / d)).normalized();
    }
    Ok(finish(log_sum / lit(n as f64), &LyapunovConfig::default()))
}

/// Exponent for every cell of `spec`; the result does not depend on the thread count.
pub fn lyapunov_grid<T: Real>(
    params: &TopParams<T>,
    spec: GridSpec,
    n: usize,
    cfg: &LyapunovConfig,
) -> Result<Grid<T>> {
    GridSpec::new(spec.n_theta, spec.n_phi)?;
    let values = (0..spec.len())
        .into_par_iter()
        .map(|idx| {
            let (t, p) = spec.cell::<T>(idx);
            lyapunov(&SpherePoint::from_angles(t, p), params, n, cfg).map(|e| e.lambda)
        })
        .collect::<Result<Vec<T>>>()?;
    Ok(Grid { spec, values })
}
