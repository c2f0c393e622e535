use serde::{Deserialize, Serialize};

use crate::jacobian::{mat_vec, orbit_jacobian, tangent_basis};
use crate::map::power;
use crate::stability::{stability, tol, Verdict};
use crate::{lit, ClassicalError, Real, Result, SpherePoint, TopParams};

/// A verified periodic point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedPointRecord<T> {
    pub point: SpherePoint<T>,
    pub period: usize,
    /// Max-norm of `F^period(X) − X`.
    pub residual: T,
    /// Trace of the reduced 2×2 product Jacobian.
    pub jacobian_trace: T,
    pub stable: bool,
    pub verdict: Verdict,
    /// `|Tr M₂|`, the reduced-2D convention.
    pub margin: T,
    /// `|1 − Tr M₃|`, the 3×3 convention.
    pub margin_full: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedPointConfig {
    /// Seed grid over (θ, φ).
    pub seed_theta: usize,
    pub seed_phi: usize,
    /// Seeds on each time-reversal symmetry circle.
    pub line_seeds: usize,
    pub max_iter: usize,
    /// Newton stops once the residual drops below this.
    pub newton_tol: f64,
    /// Records must satisfy `residual < residual_tol`.
    pub residual_tol: f64,
    /// Roots closer than this (max-norm) are merged.
    pub dedup_tol: f64,
    /// A root with `|F^d(X) − X| < exclusion_tol` for a proper divisor `d` is dropped.
    pub exclusion_tol: f64,
    /// Largest tangent step per Newton iteration.
    pub max_step: f64,
}

impl Default for FixedPointConfig {
    fn default() -> Self {
        Self {
            seed_theta: 24,
            seed_phi: 48,
            line_seeds: 400,
            max_iter: 60,
            newton_tol: 1e-13,
            residual_tol: 1e-9,
            dedup_tol: 1e-7,
            exclusion_tol: 1e-6,
            max_step: 0.2,
        }
    }
}

/// Result of a search, with counts of dropped candidates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixedPointSearch<T> {
    pub records: Vec<FixedPointRecord<T>>,
    pub seeds: usize,
    pub diverged: usize,
    pub lower_period: usize,
}

pub const SUPPORTED_PERIODS: [usize; 5] = [1, 2, 3, 4, 6];

/// All period-`period` points reachable from the configured seeds.
///
/// Newton runs on `F^n(X) − X` in tangent coordinates. Seeds are a (θ, φ) grid,
/// the fixed circles of `T` and `T̃`, and for the standard `p = π/2` top the
/// closed-form period-1 and period-2 families.
pub fn find_fixed_points<T: Real>(
    params: &TopParams<T>,
    period: usize,
    cfg: &FixedPointConfig,
) -> Result<FixedPointSearch<T>> {
    if !SUPPORTED_PERIODS.contains(&period) {
        return Err(ClassicalError::Precondition(format!("period must be one of {SUPPORTED_PERIODS:?}, got {period}")));
    }
    params.validate()?;
    let seeds = seeds(params, period, cfg);
    let mut out = FixedPointSearch { records: Vec::new(), seeds: seeds.len(), diverged: 0, lower_period: 0 };
    let dedup = tol::<T>(cfg.dedup_tol);
    for seed in seeds {
        let Some(root) = newton(&seed, params, period, cfg) else {
            out.diverged += 1;
            continue;
        };
        if out.records.iter().any(|r| r.point.dist_max(&root) < dedup) {
            continue;
        }
        if is_lower_period(&root, params, period, cfg) {
            out.lower_period += 1;
            continue;
        }
        let s = stability(&root, period, params)?;
        out.records.push(FixedPointRecord {
            point: root,
            period,
            residual: s.residual,
            jacobian_trace: s.trace_reduced,
            stable: s.verdict == Verdict::Stable,
            verdict: s.verdict,
            margin: s.margin_reduced,
            margin_full: s.margin_full,
        });
    }
    out.records.sort_by(|a, b| {
        let ka = a.point.as_array();
        let kb = b.point.as_array();
        ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(out)
}

fn is_lower_period<T: Real>(pt: &SpherePoint<T>, params: &TopParams<T>, period: usize, cfg: &FixedPointConfig) -> bool {
    (1..period)
        .filter(|d| period % d == 0)
        .any(|d| power(pt, params, d).dist_max(pt) < tol(cfg.exclusion_tol))
}

fn newton<T: Real>(
    seed: &SpherePoint<T>,
    params: &TopParams<T>,
    period: usize,
    cfg: &FixedPointConfig,
) -> Option<SpherePoint<T>> {
    let mut x = seed.normalized();
    let max_step = lit::<T>(cfg.max_step);
    for _ in 0..cfg.max_iter {
        let (fx, m) = orbit_jacobian(&x, params, period);
        let g = fx.sub(&x);
        let res = g.x.abs().max(g.y.abs()).max(g.z.abs());
        if !res.is_finite() {
            return None;
        }
        if res < tol(cfg.newton_tol) {
            return (res < tol(cfg.residual_tol)).then_some(x);
        }
        let (e1, e2) = tangent_basis(&x);
        let m1 = mat_vec(&m, &e1);
        let m2 = mat_vec(&m, &e2);
        let a = [[e1.dot(&m1) - T::one(), e1.dot(&m2)], [e2.dot(&m1), e2.dot(&m2) - T::one()]];
        let b = [-e1.dot(&g), -e2.dot(&g)];
        let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        if det.abs() < T::epsilon() {
            return None;
        }
        let mut d0 = (b[0] * a[1][1] - a[0][1] * b[1]) / det;
        let mut d1 = (a[0][0] * b[1] - a[1][0] * b[0]) / det;
        let len = (d0 * d0 + d1 * d1).sqrt();
        if len > max_step {
            d0 = d0 * max_step / len;
            d1 = d1 * max_step / len;
        }
        x = x.add(&e1.scale(d0)).add(&e2.scale(d1)).normalized();
    }
    let (fx, _) = orbit_jacobian(&x, params, period);
    (fx.dist_max(&x) < tol(cfg.newton_tol.max(1e-12))).then_some(x)
}

fn is_canonical<T: Real>(params: &TopParams<T>) -> bool {
    params.m_order == 2 && params.k_prime == T::zero() && (params.p - T::FRAC_PI_2()).abs() < T::epsilon()
}

fn seeds<T: Real>(params: &TopParams<T>, period: usize, cfg: &FixedPointConfig) -> Vec<SpherePoint<T>> {
    let mut out = Vec::new();
    if is_canonical(params) {
        let k = params.k;
        let (o, z) = (T::one(), T::zero());
        out.push(SpherePoint::new(z, o, z));
        out.push(SpherePoint::new(z, -o, z));
        for x in period1_symmetry_line_roots(k) {
            let y = x * (k * x * lit(0.5)).tan().recip();
            out.push(SpherePoint::new(x, y, -x));
            out.push(SpherePoint::new(-x, y, x));
            if period % 2 == 0 {
                out.push(SpherePoint::new(x, -y, x));
                out.push(SpherePoint::new(-x, -y, -x));
            }
        }
        if period % 2 == 0 {
            let m_max = (k.abs() / T::PI()).to_i64().unwrap_or(0);
            for m in -m_max - 1..=m_max {
                if let Some(pair) = period2_family(k, m) {
                    out.extend(pair);
                    out.extend(pair.map(|p| SpherePoint::new(p.x, p.y, -p.z)));
                }
            }
        }
        if period % 4 == 0 {
            for p in [[o, z, z], [-o, z, z], [z, z, o], [z, z, -o]] {
                out.push(SpherePoint::from_array(p));
            }
        }
    }
    // Fixed circles of T and T̃ both contain the y axis.
    let half = params.p * lit(0.5);
    let (s, c) = half.sin_cos();
    let circles = [SpherePoint::new(s, T::zero(), -c), SpherePoint::new(c, T::zero(), s)];
    let y_axis = SpherePoint::new(T::zero(), T::one(), T::zero());
    for u in circles {
        for i in 0..cfg.line_seeds {
            let t = lit::<T>(2.0 * std::f64::consts::PI * (i as f64 + 0.5) / cfg.line_seeds as f64);
            out.push(u.scale(t.cos()).add(&y_axis.scale(t.sin())));
        }
    }
    for i in 0..cfg.seed_theta {
        for j in 0..cfg.seed_phi {
            let t = lit::<T>((i as f64 + 0.5) * std::f64::consts::PI / cfg.seed_theta as f64);
            let p = lit::<T>(-std::f64::consts::PI + 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / cfg.seed_phi as f64);
            out.push(SpherePoint::from_angles(t, p));
        }
    }
    out
}

/// Positive roots of `f(X) = X²(2 + cot²(kX/2)) − 1` on `(0, 1/√2]`.
///
/// Each root `X` gives the nontrivial period-1 points `(±X, X cot(kX/2), ∓X)`
/// of the `p = π/2` top.
pub fn period1_symmetry_line_roots<T: Real>(k: T) -> Vec<T> {
    let f = |x: T| {
        let c = (k * x * lit(0.5)).tan().recip();
        x * x * (lit::<T>(2.0) + c * c) - T::one()
    };
    let upper = T::FRAC_1_SQRT_2();
    let n = 4000;
    let mut roots = Vec::new();
    let mut prev_x = upper * lit(1e-9);
    let mut prev = f(prev_x);
    for i in 1..=n {
        let x = upper * lit::<T>(i as f64 / n as f64);
        let v = f(x);
        if prev.is_finite() && v.is_finite() {
            if v == T::zero() {
                roots.push(x);
            } else if prev < T::zero() && v > T::zero() || prev > T::zero() && v < T::zero() {
                roots.push(bisect(&f, prev_x, x));
            }
        }
        prev_x = x;
        prev = v;
    }
    roots
}

fn bisect<T: Real>(f: &impl Fn(T) -> T, mut a: T, mut b: T) -> T {
    let fa0 = f(a);
    for _ in 0..200 {
        let m = (a + b) * lit(0.5);
        if m == a || m == b {
            break;
        }
        let fm = f(m);
        if (fm < T::zero()) == (fa0 < T::zero()) {
            a = m;
        } else {
            b = m;
        }
    }
    (a + b) * lit(0.5)
}

/// The period-2 pair `(X, ±√(1 − 2X²), −X)` with `X = (2m + 1)π / k`, if it exists.
pub fn period2_family<T: Real>(k: T, m: i64) -> Option<[SpherePoint<T>; 2]> {
    let x = lit::<T>((2 * m + 1) as f64) * T::PI() / k;
    let r = T::one() - lit::<T>(2.0) * x * x;
    if !(r >= T::zero()) {
        return None;
    }
    let y = r.sqrt();
    Some([SpherePoint::new(x, y, -x), SpherePoint::new(x, -y, -x)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn only_trivial_roots_below_two() {
        let s = find_fixed_points(&TopParams::kicked(1.0_f64), 1, &FixedPointConfig::default()).unwrap();
        assert_eq!(s.records.len(), 2);
        for r in &s.records {
            assert!(r.point.x.abs() < 1e-9 && r.point.z.abs() < 1e-9 && r.stable);
        }
    }

    #[test]
    fn nontrivial_root_at_2_5() {
        let roots = period1_symmetry_line_roots(2.5_f64);
        assert_eq!(roots.len(), 1);
        let x = roots[0];
        assert!(x > 0.0 && x < std::f64::consts::FRAC_1_SQRT_2);
        let s = find_fixed_points(&TopParams::kicked(2.5), 1, &FixedPointConfig::default()).unwrap();
        assert_eq!(s.records.len(), 4);
        assert!(s.records.iter().any(|r| (r.point.x - x).abs() < 1e-9));
    }

    #[test]
    fn unsupported_period() {
        assert!(find_fixed_points(&TopParams::kicked(2.0_f64), 5, &FixedPointConfig::default()).is_err());
    }

    #[test]
    fn period2_needs_room_on_sphere() {
        assert!(period2_family(4.0_f64, 0).is_none());
        let [a, b] = period2_family(5.0_f64, 0).unwrap();
        assert!(a.sphere_defect() < 1e-15 && b.sphere_defect() < 1e-15);
    }
}
