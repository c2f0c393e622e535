use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use spin_quantum::{build_floquet, CMatrix, FloquetOperator, Params};

use crate::{eigen_blocks, BlockLabel, DiagnosticsError, Result};

/// `members` values of `k` spread linearly over `k (1 ± relative_width)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub members: usize,
    pub relative_width: f64,
}

impl Default for EnsembleSpec {
    fn default() -> Self {
        Self { members: 20, relative_width: 0.01 }
    }
}

impl EnsembleSpec {
    pub fn k_values(&self, k: f64) -> Vec<f64> {
        if self.members == 1 {
            return vec![k];
        }
        let lo = k * (1.0 - self.relative_width);
        let hi = k * (1.0 + self.relative_width);
        (0..self.members).map(|i| lo + (hi - lo) * i as f64 / (self.members - 1) as f64).collect()
    }
}

/// Which eigenphases enter the trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "block")]
pub enum Resolution {
    Full,
    Block(BlockLabel),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SffSpec {
    pub t_max: usize,
    pub ensemble: Option<EnsembleSpec>,
    /// Odd width of a centred moving average over `t ≥ 1`.
    pub smoothing: Option<usize>,
    pub connected: bool,
    pub resolution: Resolution,
}

impl SffSpec {
    pub fn new(t_max: usize) -> Self {
        Self { t_max, ensemble: Some(EnsembleSpec::default()), smoothing: None, connected: false, resolution: Resolution::Full }
    }
}

/// Everything that shaped the curve, written verbatim into sidecars.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SffDescriptor {
    pub ensemble_size: usize,
    pub relative_width: f64,
    pub k_values: Vec<f64>,
    pub smoothing_window: Option<usize>,
    pub connected: bool,
    pub resolution: Resolution,
    pub unsmoothed: bool,
    /// Levels entering the trace; values are `K/N` with this `N`.
    pub levels: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SffCurve {
    pub times: Vec<usize>,
    pub values: Vec<f64>,
    pub descriptor: SffDescriptor,
}

fn trace_series(phases: &[f64], t_max: usize) -> Vec<Complex64> {
    (0..=t_max).map(|t| phases.iter().map(|&e| Complex64::from_polar(1.0, -e * t as f64)).sum()).collect()
}

/// Ensemble-averaged `K(t)/N` for `t = 0..=t_max` from eigenphase sets of equal size.
pub fn sff_from_phases(ensemble: &[Vec<f64>], t_max: usize, connected: bool) -> Result<Vec<f64>> {
    let n = ensemble.first().map(|p| p.len()).unwrap_or(0);
    if n == 0 || ensemble.iter().any(|p| p.len() != n) {
        return Err(DiagnosticsError::Precondition("ensemble members need equal, non-zero level counts".into()));
    }
    let traces: Vec<Vec<Complex64>> = ensemble.par_iter().map(|p| trace_series(p, t_max)).collect();
    let m = traces.len() as f64;
    Ok((0..=t_max)
        .map(|t| {
            let k2 = traces.iter().map(|z| z[t].norm_sqr()).sum::<f64>() / m;
            let val = if connected {
                let z = traces.iter().map(|z| z[t]).sum::<Complex64>() / m;
                k2 - z.norm_sqr()
            } else {
                k2
            };
            val / n as f64
        })
        .collect())
}

fn smooth(values: &mut [f64], width: usize) {
    let half = width / 2;
    let src = values.to_vec();
    let last = src.len() - 1;
    for t in 1..=last {
        let lo = t.saturating_sub(half).max(1);
        let hi = (t + half).min(last);
        values[t] = src[lo..=hi].iter().sum::<f64>() / (hi - lo + 1) as f64;
    }
}

fn select(u: &FloquetOperator, res: Resolution) -> Result<Vec<f64>> {
    let blocks = eigen_blocks(u)?;
    let phases: Vec<f64> = blocks
        .iter()
        .filter(|b| match res {
            Resolution::Full => true,
            Resolution::Block(l) => b.label == l,
        })
        .flat_map(|b| b.eigenphases.iter().copied())
        .collect();
    if phases.is_empty() {
        return Err(DiagnosticsError::Precondition(format!("no levels in {res:?}")));
    }
    Ok(phases)
}

/// Spectral form factor of `u`, averaged over a `k` ensemble around `u.params.k`.
pub fn sff(u: &FloquetOperator, spec: &SffSpec) -> Result<SffCurve> {
    if spec.t_max < 1 {
        return Err(DiagnosticsError::Domain("t_max must be at least 1".into()));
    }
    if let Some(w) = spec.smoothing {
        if w == 0 || w % 2 == 0 {
            return Err(DiagnosticsError::Domain(format!("smoothing width must be odd, got {w}")));
        }
    }
    if let Some(e) = spec.ensemble {
        if e.members == 0 || !(e.relative_width >= 0.0) {
            return Err(DiagnosticsError::Domain(format!("bad ensemble {e:?}")));
        }
    }
    let ks = spec.ensemble.map(|e| e.k_values(u.params.k)).unwrap_or_else(|| vec![u.params.k]);
    let ensemble: Vec<Vec<f64>> = ks
        .par_iter()
        .map(|&k| {
            if k == u.params.k {
                select(u, spec.resolution)
            } else {
                let member = build_floquet(&Params { k, ..u.params }, u.spin)?;
                select(&member, spec.resolution)
            }
        })
        .collect::<Result<_>>()?;
    let mut values = sff_from_phases(&ensemble, spec.t_max, spec.connected)?;
    if let Some(w) = spec.smoothing {
        smooth(&mut values, w);
    }
    let descriptor = SffDescriptor {
        ensemble_size: ks.len(),
        relative_width: spec.ensemble.map(|e| e.relative_width).unwrap_or(0.0),
        k_values: ks,
        smoothing_window: spec.smoothing,
        connected: spec.connected,
        resolution: spec.resolution,
        unsmoothed: spec.ensemble.is_none_or(|e| e.members <= 1) && spec.smoothing.is_none(),
        levels: ensemble[0].len(),
    };
    Ok(SffCurve { times: (0..=spec.t_max).collect(), values, descriptor })
}

/// `|Tr Uᵗ|²` for `t = 0..=t_max` by repeated multiplication.
pub fn trace_power_sff(u: &CMatrix, t_max: usize) -> Vec<f64> {
    let mut p = CMatrix::identity(u.nrows(), u.ncols());
    let mut out = Vec::with_capacity(t_max + 1);
    out.push(p.trace().norm_sqr());
    for _ in 0..t_max {
        p = &p * u;
        out.push(p.trace().norm_sqr());
    }
    out
}
