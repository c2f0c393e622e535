use crate::map::{step_raw, twist_power};
use crate::{lit, Real, SpherePoint, TopParams};

pub type Mat3<T> = [[T; 3]; 3];
pub type Mat2<T> = [[T; 2]; 2];

/// Full and tangent-plane Jacobians at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentJacobian<T> {
    pub full: Mat3<T>,
    pub reduced: Mat2<T>,
}

pub(crate) fn mat_mul<T: Real>(a: &Mat3<T>, b: &Mat3<T>) -> Mat3<T> {
    let mut c = [[T::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
        }
    }
    c
}

pub(crate) fn mat_vec<T: Real>(a: &Mat3<T>, v: &SpherePoint<T>) -> SpherePoint<T> {
    SpherePoint::new(
        a[0][0] * v.x + a[0][1] * v.y + a[0][2] * v.z,
        a[1][0] * v.x + a[1][1] * v.y + a[1][2] * v.z,
        a[2][0] * v.x + a[2][1] * v.y + a[2][2] * v.z,
    )
}

pub(crate) fn identity<T: Real>() -> Mat3<T> {
    let (o, z) = (T::one(), T::zero());
    [[o, z, z], [z, o, z], [z, z, o]]
}

/// Analytic 3×3 derivative of [`step_raw`].
pub fn full_jacobian<T: Real>(pt: &SpherePoint<T>, params: &TopParams<T>) -> Mat3<T> {
    let (sp, cp) = params.p.sin_cos();
    let z = T::zero();
    let rot = [[cp, z, sp], [z, T::one(), z], [-sp, z, cp]];
    let zr = -pt.x * sp + pt.z * cp;
    let xr = pt.x * cp + pt.z * sp;
    let m = params.m_order;
    let a = params.k * twist_power(zr, m);
    let da = if m == 2 {
        params.k
    } else {
        params.k * lit::<T>((m - 1) as f64) * zr.powi(m as i32 - 2)
    };
    let (sa, ca) = a.sin_cos();
    let x1 = ca * xr - sa * pt.y;
    let y1 = ca * pt.y + sa * xr;
    let twist = [[ca, -sa, -y1 * da], [sa, ca, x1 * da], [z, z, T::one()]];
    let mut jac = mat_mul(&twist, &rot);
    if params.k_prime != T::zero() {
        let (sb, cb) = (params.k_prime * x1).sin_cos();
        let y2 = cb * y1 - sb * zr;
        let z2 = cb * zr + sb * y1;
        let kp = params.k_prime;
        let tx = [[T::one(), z, z], [-kp * z2, cb, -sb], [kp * y2, sb, cb]];
        jac = mat_mul(&tx, &jac);
    }
    jac
}

/// Orthonormal, right-handed tangent basis `(e1, e2)` with `e2 = X × e1`.
pub fn tangent_basis<T: Real>(pt: &SpherePoint<T>) -> (SpherePoint<T>, SpherePoint<T>) {
    let (ax, ay, az) = (pt.x.abs(), pt.y.abs(), pt.z.abs());
    let (o, z) = (T::one(), T::zero());
    let helper = if ax <= ay && ax <= az {
        SpherePoint::new(o, z, z)
    } else if ay <= az {
        SpherePoint::new(z, o, z)
    } else {
        SpherePoint::new(z, z, o)
    };
    let e1 = helper.cross(pt).normalized();
    let e2 = pt.cross(&e1);
    (e1, e2)
}

/// Projects a 3×3 tangent map from the plane at `from` to the plane at `to`.
pub fn reduced_jacobian<T: Real>(full: &Mat3<T>, from: &SpherePoint<T>, to: &SpherePoint<T>) -> Mat2<T> {
    let (e1, e2) = tangent_basis(from);
    let (f1, f2) = tangent_basis(to);
    let m1 = mat_vec(full, &e1);
    let m2 = mat_vec(full, &e2);
    [[f1.dot(&m1), f1.dot(&m2)], [f2.dot(&m1), f2.dot(&m2)]]
}

/// Jacobian of one kick at `pt`, both as 3×3 and reduced to the tangent planes.
pub fn tangent_jacobian<T: Real>(pt: &SpherePoint<T>, params: &TopParams<T>) -> TangentJacobian<T> {
    let full = full_jacobian(pt, params);
    let image = step_raw(pt, params);
    TangentJacobian { full, reduced: reduced_jacobian(&full, pt, &image) }
}

/// `F^n(X)` and the ordered product of the Jacobians along the orbit.
pub fn orbit_jacobian<T: Real>(pt: &SpherePoint<T>, params: &TopParams<T>, n: usize) -> (SpherePoint<T>, Mat3<T>) {
    let mut cur = *pt;
    let mut acc = identity();
    for _ in 0..n {
        acc = mat_mul(&full_jacobian(&cur, params), &acc);
        cur = step_raw(&cur, params).normalized();
    }
    (cur, acc)
}

pub fn trace3<T: Real>(m: &Mat3<T>) -> T {
    m[0][0] + m[1][1] + m[2][2]
}

pub fn trace2<T: Real>(m: &Mat2<T>) -> T {
    m[0][0] + m[1][1]
}

pub fn det2<T: Real>(m: &Mat2<T>) -> T {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}
