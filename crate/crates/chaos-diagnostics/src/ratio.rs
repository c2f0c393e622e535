use serde::{Deserialize, Serialize};

use crate::spacing::{circular_spacings, MIN_LEVELS};
use crate::stats::{histogram, Histogram};
use crate::{DiagnosticsError, Result, SpectrumBlock};

/// Spacings below this are treated as one level.
pub const DEGENERACY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioStats {
    /// `r_i = s_{i+1}/s_i` in level order, circularly.
    pub ratios: Vec<f64>,
    /// Levels merged into a neighbour before forming ratios.
    pub merged: usize,
    /// Mean of `min(r, 1/r)`; the mean of `r` itself diverges for uncorrelated levels.
    pub mean_tilde: f64,
    /// Density of `r` on `[0, 5)`.
    pub histogram: Histogram,
}

pub fn ratio_statistics_phases(phases: &[f64]) -> Result<RatioStats> {
    if phases.len() < MIN_LEVELS {
        return Err(DiagnosticsError::Precondition(format!("{} levels, need at least {MIN_LEVELS}", phases.len())));
    }
    let all = circular_spacings(phases);
    let spacings: Vec<f64> = all.iter().copied().filter(|&s| s >= DEGENERACY_TOL).collect();
    let merged = all.len() - spacings.len();
    let n = spacings.len();
    let ratios: Vec<f64> = (0..n).map(|i| spacings[(i + 1) % n] / spacings[i]).collect();
    let mean_tilde = ratios.iter().map(|&r| r.min(1.0 / r)).sum::<f64>() / n as f64;
    let histogram = histogram(&ratios, 50, 0.0, 5.0);
    Ok(RatioStats { ratios, merged, mean_tilde, histogram })
}

pub fn ratio_statistics(block: &SpectrumBlock) -> Result<RatioStats> {
    ratio_statistics_phases(&block.eigenphases)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_spacing() {
        let p: Vec<f64> = (0..64).map(|i| i as f64 * std::f64::consts::TAU / 64.0).collect();
        let r = ratio_statistics_phases(&p).unwrap();
        assert!(r.ratios.iter().all(|x| (x - 1.0).abs() < 1e-9));
        assert_eq!(r.merged, 0);
    }

    #[test]
    fn degenerate_levels_are_merged() {
        let mut p: Vec<f64> = (0..64).map(|i| i as f64 * 0.09).collect();
        p.insert(10, p[10]);
        let r = ratio_statistics_phases(&p).unwrap();
        assert_eq!(r.merged, 1);
        assert!(r.ratios.iter().all(|x| x.is_finite()));
    }
}
