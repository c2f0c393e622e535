use serde::{Deserialize, Serialize};

use crate::jacobian::{orbit_jacobian, reduced_jacobian, trace2, trace3};
use crate::{lit, ClassicalError, Real, Result, SpherePoint, TopParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Stable,
    Unstable,
    Marginal,
}

/// Linear stability of a periodic point.
///
/// `margin_reduced = |Tr M₂|` of the tangent-plane product Jacobian;
/// `margin_full = |1 − Tr M₃|` of the 3×3 product. The two agree at periodic points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stability<T> {
    pub verdict: Verdict,
    pub trace_reduced: T,
    pub trace_full: T,
    pub margin_reduced: T,
    pub margin_full: T,
    pub residual: T,
}

/// Tolerance `base`, loosened for low-precision scalars.
pub(crate) fn tol<T: Real>(base: f64) -> T {
    lit::<T>(base).max(T::epsilon() * lit(1e3))
}

/// Classifies a period-`period` point: stable iff `|Tr M₂| < 2`, marginal within 1e-8.
pub fn stability<T: Real>(pt: &SpherePoint<T>, period: usize, params: &TopParams<T>) -> Result<Stability<T>> {
    if period == 0 {
        return Err(ClassicalError::Precondition("period must be >= 1".into()));
    }
    params.validate()?;
    let (end, full) = orbit_jacobian(pt, params, period);
    let residual = end.dist_max(pt);
    if residual >= tol(1e-9) {
        return Err(ClassicalError::Precondition(format!("not a period-{period} point: residual {residual:?}")));
    }
    let reduced = reduced_jacobian(&full, pt, pt);
    let tr2 = trace2(&reduced);
    let tr3 = trace3(&full);
    let margin = tr2.abs();
    let two = lit::<T>(2.0);
    let verdict = if (margin - two).abs() <= tol(1e-8) {
        Verdict::Marginal
    } else if margin < two {
        Verdict::Stable
    } else {
        Verdict::Unstable
    };
    Ok(Stability {
        verdict,
        trace_reduced: tr2,
        trace_full: tr3,
        margin_reduced: margin,
        margin_full: (T::one() - tr3).abs(),
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_point() {
        let y = SpherePoint::new(0.0_f64, 1.0, 0.0);
        assert_eq!(stability(&y, 1, &TopParams::kicked(1.0)).unwrap().verdict, Verdict::Stable);
        assert_eq!(stability(&y, 1, &TopParams::kicked(2.5)).unwrap().verdict, Verdict::Unstable);
        assert_eq!(stability(&y, 1, &TopParams::kicked(2.0)).unwrap().verdict, Verdict::Marginal);
        let s = stability(&y, 1, &TopParams::kicked(1.3)).unwrap();
        assert!((s.margin_full - s.margin_reduced).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_periodic() {
        let p = SpherePoint::from_angles(1.0_f64, 1.0);
        assert!(stability(&p, 1, &TopParams::kicked(3.0)).is_err());
        assert!(stability(&p, 0, &TopParams::kicked(3.0)).is_err());
    }

    #[test]
    fn period_four_axis_points() {
        // (1,0,0) → (0,0,−1) → (−1,0,0) → (0,0,1) → (1,0,0).
        let x = SpherePoint::new(1.0_f64, 0.0, 0.0);
        for k in [0.3_f64, 1.0, 1.9] {
            let s = stability(&x, 4, &TopParams::kicked(k)).unwrap();
            let (sk, ck) = (k as f64).sin_cos();
            let printed = 2.0 * ck * ck + 2.0 * k * (2.0 * k).sin() + (k * k - 2.0) * sk * sk;
            assert!((s.trace_reduced - printed).abs() < 1e-12, "k={k}");
        }
    }
}
