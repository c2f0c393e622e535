use serde::{Deserialize, Serialize};

use crate::{lit, ClassicalError, Real, Result};

/// Point on the unit sphere, the classical limit of `J / j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpherePoint<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> SpherePoint<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    /// Normalised point; fails on non-finite or zero input.
    pub fn on_sphere(x: T, y: T, z: T) -> Result<Self> {
        let p = Self::new(x, y, z);
        if !p.is_finite() {
            return Err(ClassicalError::Domain(format!("non-finite coordinates {p:?}")));
        }
        let n = p.norm();
        if n == T::zero() {
            return Err(ClassicalError::Domain("zero vector has no direction".into()));
        }
        Ok(p.scale(n.recip()))
    }

    /// `x = sin θ cos φ, y = sin θ sin φ, z = cos θ`.
    pub fn from_angles(theta: T, phi: T) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self::new(st * cp, st * sp, ct)
    }

    /// Returns `(θ, φ)` with `θ ∈ [0, π]` and `φ ∈ (−π, π]`.
    pub fn to_angles(&self) -> (T, T) {
        let z = self.z.max(-T::one()).min(T::one());
        (z.acos(), self.y.atan2(self.x))
    }

    pub fn as_array(&self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array(a: [T; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn norm(&self) -> T {
        self.dot(self).sqrt()
    }

    pub fn dot(&self, o: &Self) -> T {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(&self, o: &Self) -> Self {
        Self::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn scale(&self, s: T) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }

    pub fn normalized(&self) -> Self {
        self.scale(self.norm().recip())
    }

    /// Max-norm distance.
    pub fn dist_max(&self, o: &Self) -> T {
        (self.x - o.x).abs().max((self.y - o.y).abs()).max((self.z - o.z).abs())
    }

    /// `|x² + y² + z² − 1|`.
    pub fn sphere_defect(&self) -> T {
        (self.dot(self) - T::one()).abs()
    }
}

/// Model parameters shared by the classical and quantum tops.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TopParams<T> {
    /// Kick strength.
    pub k: T,
    /// Precession angle in radians.
    pub p: T,
    /// Second kick strength about x; zero for the standard top.
    pub k_prime: T,
    /// Order of the kick, `Jz^m`.
    pub m_order: u32,
}

impl<T: Real> TopParams<T> {
    pub fn standard(k: T, p: T) -> Self {
        Self { k, p, k_prime: T::zero(), m_order: 2 }
    }

    /// The canonical `p = π/2` top.
    pub fn kicked(k: T) -> Self {
        Self::standard(k, T::FRAC_PI_2())
    }

    pub fn with_k_prime(mut self, k_prime: T) -> Self {
        self.k_prime = k_prime;
        self
    }

    pub fn with_m_order(mut self, m: u32) -> Self {
        self.m_order = m;
        self
    }

    pub fn with_k(mut self, k: T) -> Self {
        self.k = k;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.m_order < 2 {
            return Err(ClassicalError::Domain(format!("m_order must be >= 2, got {}", self.m_order)));
        }
        if !(self.k.is_finite() && self.p.is_finite() && self.k_prime.is_finite()) {
            return Err(ClassicalError::Domain("k, p and k_prime must be finite".into()));
        }
        Ok(())
    }

    pub fn is_double_kick(&self) -> bool {
        self.k_prime != T::zero()
    }

    /// `(k + k') / 2`.
    pub fn k_r(&self) -> T {
        (self.k + self.k_prime) * lit(0.5)
    }

    /// `(k − k') / 2`.
    pub fn k_theta(&self) -> T {
        (self.k - self.k_prime) * lit(0.5)
    }
}

/// Tangent vector attached to a base point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentFrame<T> {
    pub base: SpherePoint<T>,
    pub delta: [T; 3],
}

impl<T: Real> TangentFrame<T> {
    /// Projects `delta` onto the tangent plane of `base`.
    pub fn new(base: SpherePoint<T>, delta: [T; 3]) -> Self {
        let d = SpherePoint::from_array(delta);
        let d = d.sub(&base.scale(d.dot(&base)));
        Self { base, delta: d.as_array() }
    }

    pub fn norm(&self) -> T {
        SpherePoint::from_array(self.delta).norm()
    }

    pub fn normal_component(&self) -> T {
        SpherePoint::from_array(self.delta).dot(&self.base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn angles_round_trip() {
        let p = SpherePoint::from_angles(1.1_f64, -2.0);
        let (t, f) = p.to_angles();
        assert!((t - 1.1).abs() < 1e-14 && (f + 2.0).abs() < 1e-14);
        assert!(p.sphere_defect() < 1e-15);
    }

    #[test]
    fn params_defaults() {
        let p = TopParams::kicked(3.0_f64);
        assert_eq!(p.m_order, 2);
        assert_eq!(p.p, PI / 2.0);
        assert!(p.validate().is_ok());
        assert!(p.with_m_order(1).validate().is_err());
        assert!(TopParams::standard(f64::NAN, 0.0).validate().is_err());
        let d = p.with_k_prime(1.0);
        assert_eq!((d.k_r(), d.k_theta()), (2.0, 1.0));
    }

    #[test]
    fn rejects_bad_points() {
        assert!(SpherePoint::on_sphere(0.0_f64, 0.0, 0.0).is_err());
        assert!(SpherePoint::on_sphere(f64::INFINITY, 0.0, 0.0).is_err());
        let p = SpherePoint::on_sphere(3.0_f64, 0.0, 4.0).unwrap();
        assert!((p.z - 0.8).abs() < 1e-15);
    }

    #[test]
    fn tangent_frame_is_tangent() {
        let b = SpherePoint::from_angles(0.7_f64, 0.2);
        let f = TangentFrame::new(b, [0.3, -1.0, 2.0]);
        assert!(f.normal_component().abs() < 1e-14);
    }

    #[test]
    fn works_in_f32() {
        let p = SpherePoint::from_angles(0.5_f32, 0.5);
        assert!(p.sphere_defect() < 1e-6);
    }
}
