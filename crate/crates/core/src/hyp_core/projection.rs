//! Hyperbolic projection onto diameters of the disc.
//!
//! A diameter `(-1, 1) tau` is carried to the positive real axis of the
//! half-plane by `z -> C(conj(tau) z)`. There the projection of
//! `rho e^{i theta}` is `rho` and its distance to the axis depends on `theta`
//! only.

use num_complex::Complex;

use super::points::{DiscPoint, HalfPlanePoint};
use crate::error::{HypError, Result};
use crate::scalar::Real;

/// The diameter `r -> r tau`, `r in (-1, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGeodesic<T> {
    tau: Complex<T>,
}

impl<T: Real> RadialGeodesic<T> {
    /// `tau` must be unimodular up to `1e-9`; it is renormalized.
    pub fn new(tau: Complex<T>) -> Result<Self> {
        let n = tau.norm();
        if !n.is_finite() || (n - T::one()).abs() > T::lit(1e-9).max(T::epsilon() * T::lit(8.0)) {
            return Err(HypError::domain(format!("direction {tau} is not unimodular")));
        }
        Ok(Self { tau: tau / n })
    }

    pub fn from_angle(angle: T) -> Self {
        Self {
            tau: Complex::from_polar(T::one(), angle),
        }
    }

    pub fn tau(&self) -> Complex<T> {
        self.tau
    }

    /// Image of `z` in the half-plane frame where this diameter is `(0, ∞)`
    /// and `tau` sits at infinity.
    pub fn to_halfplane(&self, z: DiscPoint<T>) -> HalfPlanePoint<T> {
        let v = z.value();
        // |1 ± conj(tau) z| = |tau ± z|, computed without rotating z.
        let log_rho = (self.tau + v).norm().ln() - (self.tau - v).norm().ln();
        let im = self.tau.re * v.im - self.tau.im * v.re;
        let theta = (T::two() * im).atan2(z.gap());
        HalfPlanePoint::new(log_rho, theta).expect("image of a disc point")
    }

    /// Signed hyperbolic arc-length position of the projection of `z`,
    /// measured from the origin towards `tau`.
    pub fn coordinate(&self, z: DiscPoint<T>) -> T {
        T::half() * self.to_halfplane(z).log_rho()
    }

    /// Point of the diameter at signed hyperbolic position `s`.
    pub fn point_at(&self, s: T) -> DiscPoint<T> {
        DiscPoint::guarded(self.tau * s.tanh())
    }

    pub fn project(&self, z: DiscPoint<T>) -> DiscPoint<T> {
        self.point_at(self.coordinate(z))
    }

    /// Hyperbolic distance from `z` to the diameter.
    pub fn distance(&self, z: DiscPoint<T>) -> T {
        let v = z.value();
        let im = self.tau.re * v.im - self.tau.im * v.re;
        // tan(theta) = 2 Im(conj(tau) z) / (1 - |z|^2)
        T::half() * (T::two() * im.abs() / z.gap()).asinh()
    }
}

/// Closest point of the diameter through `geo` to `z`.
pub fn project_to_radius<T: Real>(z: DiscPoint<T>, geo: RadialGeodesic<T>) -> DiscPoint<T> {
    geo.project(z)
}

/// Hyperbolic distance from `z` to the diameter through `geo`.
pub fn dist_to_radius<T: Real>(z: DiscPoint<T>, geo: RadialGeodesic<T>) -> T {
    geo.distance(z)
}

/// Projection onto `(0, ∞)` in the half-plane: `rho e^{i theta} -> rho`.
pub fn project_to_real_axis<T: Real>(w: HalfPlanePoint<T>) -> HalfPlanePoint<T> {
    HalfPlanePoint::from_log_real(w.log_rho())
}

/// Distance from `rho e^{i theta}` to `(0, ∞)`: `½ asinh(tan|theta|)`.
pub fn dist_to_real_axis<T: Real>(w: HalfPlanePoint<T>) -> T {
    T::half() * (w.theta().abs().sin() / w.cos_theta()).asinh()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyp_core::metric::{cayley_inv, k_half, omega};

    fn dp(re: f64, im: f64) -> DiscPoint<f64> {
        DiscPoint::new(Complex::new(re, im)).unwrap()
    }

    fn golden_section_argmin(f: impl Fn(f64) -> f64) -> f64 {
        let (mut lo, mut hi) = (-1.0 + 1e-12, 1.0 - 1e-12);
        let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
        for _ in 0..200 {
            let a = hi - inv_phi * (hi - lo);
            let b = lo + inv_phi * (hi - lo);
            if f(a) < f(b) {
                hi = b;
            } else {
                lo = a;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn points_on_the_radius_are_fixed() {
        let geo = RadialGeodesic::from_angle(0.7);
        let z = DiscPoint::new(geo.tau() * 0.4).unwrap();
        assert!((geo.project(z).value() - z.value()).norm() < 1e-15);
        assert!(geo.distance(z) < 1e-15);
    }

    #[test]
    fn half_plane_projection_is_the_modulus() {
        let w = HalfPlanePoint::from_complex(Complex::from_polar(2.0, std::f64::consts::FRAC_PI_4))
            .unwrap();
        let p = project_to_real_axis(w);
        assert!((p.rho() - 2.0).abs() < 1e-15);
        assert_eq!(p.theta(), 0.0);
        // through the disc: the geodesic tau = 1 corresponds to (0, ∞)
        let geo = RadialGeodesic::new(Complex::new(1.0, 0.0)).unwrap();
        let z = cayley_inv(w);
        let proj = geo.to_halfplane(geo.project(z));
        assert!((proj.rho() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn matches_golden_section() {
        let z = dp(0.3, 0.3);
        let geo = RadialGeodesic::new(Complex::new(1.0, 0.0)).unwrap();
        let r = golden_section_argmin(|r| omega(dp(r, 0.0), z));
        assert!((geo.project(z).value().re - r).abs() < 1e-6);
        assert!((geo.distance(z) - omega(z, geo.project(z))).abs() < 1e-12);
    }

    #[test]
    fn distance_is_scale_invariant_after_transfer() {
        let a = std::f64::consts::FRAC_PI_3;
        let w1 = HalfPlanePoint::from_complex(Complex::from_polar(2.0, a)).unwrap();
        let w2 = HalfPlanePoint::from_complex(Complex::from_polar(5.0, a)).unwrap();
        assert!((dist_to_real_axis(w1) - dist_to_real_axis(w2)).abs() < 1e-15);
        let geo = RadialGeodesic::new(Complex::new(1.0, 0.0)).unwrap();
        let (d1, d2) = (geo.distance(cayley_inv(w1)), geo.distance(cayley_inv(w2)));
        assert!((d1 - d2).abs() < 1e-12);
        assert!((d1 - k_half(w1, project_to_real_axis(w1))).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_unimodular_direction() {
        assert!(RadialGeodesic::new(Complex::new(0.5f64, 0.0)).is_err());
    }
}
