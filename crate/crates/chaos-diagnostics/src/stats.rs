use serde::{Deserialize, Serialize};

/// Density histogram: `density[i]` integrates to the fraction of samples in the bin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<usize>,
    pub density: Vec<f64>,
}

impl Histogram {
    pub fn bins(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.edges.windows(2).zip(&self.density).map(|(e, d)| (e[0], e[1], *d))
    }
}

/// `bins` equal bins on `[lo, hi)`; samples outside still count towards the total.
pub fn histogram(samples: &[f64], bins: usize, lo: f64, hi: f64) -> Histogram {
    let w = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    for &x in samples {
        if x >= lo && x < hi {
            counts[(((x - lo) / w) as usize).min(bins - 1)] += 1;
        }
    }
    let total = samples.len().max(1) as f64;
    let density = counts.iter().map(|&c| c as f64 / (total * w)).collect();
    Histogram { edges: (0..=bins).map(|i| lo + i as f64 * w).collect(), counts, density }
}

/// Kolmogorov–Smirnov distance `sup |F_n − F|`.
pub fn ks_distance(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut s = samples.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len() as f64;
    s.iter().enumerate().fold(0.0_f64, |d, (i, &x)| {
        let f = cdf(x);
        d.max((f - i as f64 / n).abs()).max(((i + 1) as f64 / n - f).abs())
    })
}

pub fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

/// Least squares `y = a x + b`; returns `(a, b, R²)`. `R² = 0` for constant `y`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let (mx, my) = (mean(x), mean(y));
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|v| (v - my).powi(2)).sum();
    let a = sxy / sxx;
    let b = my - a * mx;
    let r2 = if syy <= 1e-300 { 0.0 } else { (sxy * sxy) / (sxx * syy) };
    (a, b, r2)
}

/// `E x⁴ / (E x²)² − 3` about zero.
pub fn excess_kurtosis_about_zero(x: &[f64]) -> f64 {
    let m2 = x.iter().map(|v| v * v).sum::<f64>() / x.len() as f64;
    let m4 = x.iter().map(|v| v.powi(4)).sum::<f64>() / x.len() as f64;
    m4 / (m2 * m2) - 3.0
}

fn simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
        return left + right + (left + right - whole) / 15.0;
    }
    simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Adaptive Simpson quadrature on `[a, b]`, started from 32 panels so narrow
/// peaks are not missed.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    const PANELS: usize = 32;
    let h = (b - a) / PANELS as f64;
    (0..PANELS)
        .map(|i| {
            let (lo, hi) = (a + i as f64 * h, if i + 1 == PANELS { b } else { a + (i + 1) as f64 * h });
            let (fa, fb, fm) = (f(lo), f(hi), f(0.5 * (lo + hi)));
            let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
            simpson(&f, lo, hi, fa, fm, fb, whole, tol / PANELS as f64, 40)
        })
        .sum()
}

/// `∫₀^∞ f` through `r = t/(1 − t)`.
pub fn integrate_half_line(f: impl Fn(f64) -> f64, tol: f64) -> f64 {
    integrate(
        |t| {
            if t >= 1.0 {
                return 0.0;
            }
            let r = t / (1.0 - t);
            f(r) / ((1.0 - t) * (1.0 - t))
        },
        0.0,
        1.0,
        tol,
    )
}
