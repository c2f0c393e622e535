use serde::{Deserialize, Serialize};

use crate::{DiagnosticsError, Result, SpectrumBlock};

pub const DEFAULT_WINDOW: usize = 21;
pub const MIN_LEVELS: usize = 50;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpacingSample {
    pub raw: Vec<f64>,
    /// Mean exactly one.
    pub unfolded: Vec<f64>,
    pub window: usize,
}

/// `N` spacings of sorted phases on the circle, the last one wrapping through 2π.
pub fn circular_spacings(phases: &[f64]) -> Vec<f64> {
    let n = phases.len();
    (0..n)
        .map(|i| if i + 1 < n { phases[i + 1] - phases[i] } else { phases[0] + std::f64::consts::TAU - phases[i] })
        .collect()
}

/// Each spacing over the mean of the `window` spacings centred on it
/// (circularly), then rescaled to unit mean.
pub fn unfold_phases(phases: &[f64], window: usize) -> Result<SpacingSample> {
    let n = phases.len();
    if n < MIN_LEVELS {
        return Err(DiagnosticsError::Precondition(format!("{n} levels, need at least {MIN_LEVELS}")));
    }
    if window == 0 || window > n {
        return Err(DiagnosticsError::Precondition(format!("window {window} for {n} levels")));
    }
    if phases.windows(2).any(|w| w[1] < w[0]) {
        return Err(DiagnosticsError::Precondition("phases are not sorted".into()));
    }
    let raw = circular_spacings(phases);
    let half = window / 2;
    let width = 2 * half + 1;
    let at = |i: isize| raw[i.rem_euclid(n as isize) as usize];
    let mut sum: f64 = (-(half as isize)..=half as isize).map(at).sum();
    let mut unfolded = Vec::with_capacity(n);
    for i in 0..n as isize {
        let local = sum / width as f64;
        unfolded.push(if local > 0.0 { raw[i as usize] / local } else { 0.0 });
        sum += at(i + half as isize + 1) - at(i - half as isize);
    }
    let m = unfolded.iter().sum::<f64>() / n as f64;
    unfolded.iter_mut().for_each(|u| *u /= m);
    Ok(SpacingSample { raw, unfolded, window })
}

pub fn unfold_spacings(block: &SpectrumBlock, window: usize) -> Result<SpacingSample> {
    unfold_phases(&block.eigenphases, window)
}
