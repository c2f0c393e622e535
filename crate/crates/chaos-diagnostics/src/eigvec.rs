use nalgebra::DVector;
use serde::{Deserialize, Serialize};
use spin_quantum::{build_operators, single_qubit_rdm, CMatrix, Spin, SpinState};

use crate::stats::excess_kurtosis_about_zero;
use crate::{DiagnosticsError, EigenBlock, Result};

const NORM_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Participation {
    /// `Σ|c_i|⁴` per state.
    pub ipr: Vec<f64>,
    /// `1/IPR`.
    pub pr: Vec<f64>,
}

impl Participation {
    pub fn median_pr(&self) -> f64 {
        median(&self.pr)
    }
}

pub(crate) fn median(x: &[f64]) -> f64 {
    let mut v = x.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        f64::NAN
    } else if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// IPR and PR of each column of `states`, optionally after changing to the
/// basis whose columns are `basis` (default `|j, m⟩`).
pub fn ipr(states: &CMatrix, basis: Option<&CMatrix>) -> Result<Participation> {
    let coeffs = match basis {
        Some(b) => {
            if b.nrows() != states.nrows() {
                return Err(DiagnosticsError::Domain("basis and states differ in dimension".into()));
            }
            b.adjoint() * states
        }
        None => states.clone(),
    };
    let mut ipr = Vec::with_capacity(coeffs.ncols());
    for (i, c) in coeffs.column_iter().enumerate() {
        let n2: f64 = c.iter().map(|z| z.norm_sqr()).sum();
        if (n2 - 1.0).abs() > NORM_TOL {
            return Err(DiagnosticsError::Precondition(format!("state {i} has norm² {n2}")));
        }
        ipr.push(c.iter().map(|z| z.norm_sqr().powi(2)).sum());
    }
    let pr = ipr.iter().map(|x| 1.0 / x).collect();
    Ok(Participation { ipr, pr })
}

/// Single-qubit von Neumann entropy (nats) of each column, in `[0, ln 2]`.
pub fn eigenstate_entropy(states: &CMatrix, spin: Spin) -> Result<Vec<f64>> {
    states
        .column_iter()
        .map(|c| {
            let s = SpinState::new(spin, DVector::from_iterator(c.len(), c.iter().copied()))?;
            let ev = single_qubit_rdm(&s).eigenvalues();
            Ok(ev.iter().filter(|&&l| l > 0.0).map(|&l| -l * l.ln()).sum::<f64>().clamp(0.0, std::f64::consts::LN_2))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Observable {
    JzOverJ,
    JxOverJ,
    JyOverJ,
    Jz2OverJ2,
}

impl Observable {
    pub fn name(&self) -> &'static str {
        match self {
            Observable::JzOverJ => "Jz/j",
            Observable::JxOverJ => "Jx/j",
            Observable::JyOverJ => "Jy/j",
            Observable::Jz2OverJ2 => "Jz^2/j^2",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().replace(['_', '-'], "").as_str() {
            "jz/j" | "jz" => Some(Observable::JzOverJ),
            "jx/j" | "jx" => Some(Observable::JxOverJ),
            "jy/j" | "jy" => Some(Observable::JyOverJ),
            "jz^2/j^2" | "jz2" => Some(Observable::Jz2OverJ2),
            _ => None,
        }
    }

    pub fn matrix(&self, spin: Spin) -> CMatrix {
        let ops = build_operators(spin);
        let j = spin.j();
        let s = |m: CMatrix, f: f64| m.map(|z| z * f);
        match self {
            Observable::JzOverJ => s(ops.jz, 1.0 / j),
            Observable::JxOverJ => s(ops.jx, 1.0 / j),
            Observable::JyOverJ => s(ops.jy, 1.0 / j),
            Observable::Jz2OverJ2 => s(&ops.jz * &ops.jz, 1.0 / (j * j)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EthSpec {
    pub observable: Observable,
    /// Microcanonical window, consecutive states in phase order.
    pub window: usize,
    /// States nearest `centre_phase` used for off-diagonal samples.
    pub offdiag_states: usize,
    pub centre_phase: f64,
    pub omega_bins: usize,
}

impl Default for EthSpec {
    fn default() -> Self {
        Self {
            observable: Observable::JyOverJ,
            window: 51,
            offdiag_states: 51,
            centre_phase: std::f64::consts::PI,
            omega_bins: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservableStats {
    pub observable: Observable,
    pub phases: Vec<f64>,
    pub diagonal: Vec<f64>,
    pub window_mean: Vec<f64>,
    /// Standard deviation of `O_αα − window mean`.
    pub fluctuation: f64,
    /// `(ω, O_αβ)` with `ω ∈ (−π, π]`; the sign of `O_αβ` is gauge-dependent, the magnitude is not.
    pub offdiag: Vec<(f64, f64)>,
    pub bin_edges: Vec<f64>,
    pub bin_counts: Vec<usize>,
    pub bin_variance: Vec<f64>,
    /// Excess kurtosis of `±|O_αβ|`: 0 for a real Gaussian, −1 for a complex one.
    pub excess_kurtosis: f64,
}

fn wrap_pm(x: f64) -> f64 {
    let t = (x + std::f64::consts::PI).rem_euclid(std::f64::consts::TAU) - std::f64::consts::PI;
    if t <= -std::f64::consts::PI {
        std::f64::consts::PI
    } else {
        t
    }
}

/// ETH diagnostics of one observable over one eigen-block.
pub fn eth_stats(block: &EigenBlock, spin: Spin, spec: &EthSpec) -> Result<ObservableStats> {
    let n = block.spectrum.len();
    if spec.window < 10 || spec.offdiag_states < 10 {
        return Err(DiagnosticsError::Precondition("ETH windows need at least 10 states".into()));
    }
    if spec.window > n || spec.offdiag_states > n {
        return Err(DiagnosticsError::Precondition(format!("window larger than the {n}-state block")));
    }
    if spec.omega_bins == 0 {
        return Err(DiagnosticsError::Domain("need at least one ω bin".into()));
    }
    let v = &block.vectors;
    let o = spec.observable.matrix(spin);
    let ov = &o * v;
    let diagonal: Vec<f64> = (0..n).map(|a| v.column(a).dotc(&ov.column(a)).re).collect();
    let half = spec.window / 2;
    let width = 2 * half + 1;
    let window_mean: Vec<f64> = (0..n)
        .map(|a| (0..width).map(|d| diagonal[(a + n + d - half) % n]).sum::<f64>() / width as f64)
        .collect();
    let dev: Vec<f64> = diagonal.iter().zip(&window_mean).map(|(d, m)| d - m).collect();
    let mu = dev.iter().sum::<f64>() / n as f64;
    let fluctuation = (dev.iter().map(|d| (d - mu).powi(2)).sum::<f64>() / n as f64).sqrt();

    let phases = &block.spectrum.eigenphases;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        wrap_pm(phases[a] - spec.centre_phase).abs().total_cmp(&wrap_pm(phases[b] - spec.centre_phase).abs()).then(a.cmp(&b))
    });
    let mut chosen = order[..spec.offdiag_states].to_vec();
    chosen.sort_unstable();
    let mut offdiag = Vec::new();
    for (i, &a) in chosen.iter().enumerate() {
        for &b in &chosen[i + 1..] {
            let z = v.column(a).dotc(&ov.column(b));
            offdiag.push((wrap_pm(phases[a] - phases[b]), z.norm()));
        }
    }
    let lo = offdiag.iter().map(|x| x.0).fold(f64::INFINITY, f64::min);
    let hi = offdiag.iter().map(|x| x.0).fold(f64::NEG_INFINITY, f64::max);
    let nb = spec.omega_bins;
    let bin_edges: Vec<f64> = (0..=nb).map(|i| lo + (hi - lo) * i as f64 / nb as f64).collect();
    let mut sums = vec![(0usize, 0.0f64); nb];
    for &(w, x) in &offdiag {
        let i = if hi > lo { (((w - lo) / (hi - lo)) * nb as f64).floor() as usize } else { 0 }.min(nb - 1);
        sums[i].0 += 1;
        // Mean zero by the gauge symmetry, so the variance is the mean square.
        sums[i].1 += x * x;
    }
    let bin_counts = sums.iter().map(|s| s.0).collect();
    let bin_variance = sums.iter().map(|s| if s.0 > 0 { s.1 / s.0 as f64 } else { f64::NAN }).collect();
    let signed: Vec<f64> = offdiag.iter().flat_map(|&(_, x)| [x, -x]).collect();
    Ok(ObservableStats {
        observable: spec.observable,
        phases: phases.clone(),
        diagonal,
        window_mean,
        fluctuation,
        offdiag,
        bin_edges,
        bin_counts,
        bin_variance,
        excess_kurtosis: excess_kurtosis_about_zero(&signed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use spin_quantum::{coherent_state, Complex};

    #[test]
    fn ipr_trivial_cases() {
        let n = 7;
        let id = CMatrix::identity(n, n);
        assert!(ipr(&id, None).unwrap().ipr.iter().all(|&x| (x - 1.0).abs() < 1e-15));
        let u = CMatrix::from_element(n, 1, Complex::new(1.0 / (n as f64).sqrt(), 0.0));
        let p = ipr(&u, None).unwrap();
        assert!((p.ipr[0] - 1.0 / n as f64).abs() < 1e-14 && (p.pr[0] - n as f64).abs() < 1e-12);
        assert!((ipr(&u, Some(&id)).unwrap().ipr[0] - p.ipr[0]).abs() < 1e-15);
        assert!(ipr(&(u * Complex::new(2.0, 0.0)), None).is_err());
    }

    #[test]
    fn entropy_limits() {
        let spin = Spin::new(5.0).unwrap();
        let c = coherent_state(1.1, 0.4, spin).unwrap().amplitudes;
        let s = eigenstate_entropy(&CMatrix::from_column_slice(11, 1, c.as_slice()), spin).unwrap();
        assert!(s[0].abs() < 1e-10);
        // m = 0 has ⟨J⟩ = 0.
        let mut e = CMatrix::zeros(11, 1);
        e[(5, 0)] = Complex::new(1.0, 0.0);
        assert!((eigenstate_entropy(&e, spin).unwrap()[0] - std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn observable_names_round_trip() {
        for o in [Observable::JzOverJ, Observable::JxOverJ, Observable::JyOverJ, Observable::Jz2OverJ2] {
            assert_eq!(Observable::parse(o.name()), Some(o));
        }
        assert_eq!(Observable::parse("nope"), None);
    }
}
