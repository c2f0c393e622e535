use crate::{ClassicalError, Real, Result, SpherePoint, TopParams};

/// The map without renormalisation or input checks.
///
/// Rotation about y by `p`, twist about z by `k z^(m−1)`, then (double kick
/// only) twist about x by `k' x`.
#[inline]
pub fn step_raw<T: Real>(pt: &SpherePoint<T>, params: &TopParams<T>) -> SpherePoint<T> {
    let (sp, cp) = params.p.sin_cos();
    let zr = -pt.x * sp + pt.z * cp;
    let xr = pt.x * cp + pt.z * sp;
    let a = params.k * twist_power(zr, params.m_order);
    let (sa, ca) = a.sin_cos();
    let x1 = ca * xr - sa * pt.y;
    let y1 = ca * pt.y + sa * xr;
    if params.k_prime == T::zero() {
        return SpherePoint::new(x1, y1, zr);
    }
    let (sb, cb) = (params.k_prime * x1).sin_cos();
    SpherePoint::new(x1, cb * y1 - sb * zr, cb * zr + sb * y1)
}

/// `z^(m−1)`.
#[inline]
pub(crate) fn twist_power<T: Real>(z: T, m: u32) -> T {
    if m == 2 {
        z
    } else {
        z.powi(m as i32 - 1)
    }
}

/// One kick, renormalised to the sphere.
pub fn step<T: Real>(pt: &SpherePoint<T>, params: &TopParams<T>) -> Result<SpherePoint<T>> {
    if !pt.is_finite() {
        return Err(ClassicalError::Domain(format!("non-finite point {pt:?}")));
    }
    params.validate()?;
    Ok(step_raw(pt, params).normalized())
}

/// Orbit `X_0 .. X_n` (length `n + 1`).
pub fn iterate<T: Real>(pt: &SpherePoint<T>, params: &TopParams<T>, n: usize) -> Result<Vec<SpherePoint<T>>> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(*pt);
    let mut cur = *pt;
    for _ in 0..n {
        cur = step(&cur, params)?;
        out.push(cur);
    }
    Ok(out)
}

/// `F^n(X)`, renormalised each step.
pub(crate) fn power<T: Real>(pt: &SpherePoint<T>, params: &TopParams<T>, n: usize) -> SpherePoint<T> {
    let mut cur = *pt;
    for _ in 0..n {
        cur = step_raw(&cur, params).normalized();
    }
    cur
}
