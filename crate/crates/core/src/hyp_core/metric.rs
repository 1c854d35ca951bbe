//! Distances, densities and path lengths in the disc and the right half-plane.
//!
//! Conventions: the disc density is `|v| / (1 - |z|^2)` and the half-plane
//! density is `|v| / (2 Re w)`, so the Cayley transform `(1 + z) / (1 - z)`
//! is an isometry between the two.

use num_complex::Complex;

use super::points::{is_finite, DiscPoint, HalfPlanePoint};
use crate::error::{HypError, Result};
use crate::quadrature::gauss_legendre_16;
use crate::scalar::{one_minus_abs2, Real};

/// Above this separation in `ln rho` the half-plane distance is evaluated in
/// logarithmic form.
pub const LOG_BRANCH_CROSSOVER: f64 = 30.0;

/// Which model a point or polyline lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    Disc,
    HalfPlane,
}

/// Hyperbolic distance in the unit disc.
///
/// Uses `sinh ω = |z - w| / sqrt((1 - |z|^2)(1 - |w|^2))`, which keeps full
/// relative precision for nearby points as well as near the boundary.
pub fn omega<T: Real>(z: DiscPoint<T>, w: DiscPoint<T>) -> T {
    let num = (z.value() - w.value()).norm();
    if num == T::zero() {
        return T::zero();
    }
    let den = z.gap().sqrt() * w.gap().sqrt();
    (num / den).asinh()
}

/// Hyperbolic distance in the right half-plane.
pub fn k_half<T: Real>(w1: HalfPlanePoint<T>, w2: HalfPlanePoint<T>) -> T {
    if w1.theta() == T::zero() && w2.theta() == T::zero() {
        return T::half() * (w2.log_rho() - w1.log_rho()).abs();
    }
    // Scale the pair so the larger modulus becomes 1: distance is invariant
    // under positive dilations.
    let (small, large) = if w1.log_rho() <= w2.log_rho() {
        (w1, w2)
    } else {
        (w2, w1)
    };
    let sep = large.log_rho() - small.log_rho();
    let u = (-sep).exp();
    let a = Complex::from_polar(u, small.theta());
    let b = Complex::from_polar(T::one(), large.theta());
    let chord = (a - b).norm();
    if chord == T::zero() {
        return T::zero();
    }
    let (ca, cb) = (small.cos_theta(), large.cos_theta());
    if sep <= T::lit(LOG_BRANCH_CROSSOVER) {
        let x = chord / (T::two() * u.sqrt() * ca.sqrt() * cb.sqrt());
        x.asinh()
    } else {
        // asinh(X) = ln X + ln(1 + sqrt(1 + X^-2)) with X held in log form.
        let ln_x = chord.ln() - T::LN_2() + T::half() * (sep - ca.ln() - cb.ln());
        let inv_sq = (-(ln_x + ln_x)).exp();
        ln_x + (T::one() + (T::one() + inv_sq).sqrt()).ln()
    }
}

/// Infinitesimal hyperbolic length of `v` at `z` in the disc.
pub fn kappa_disc<T: Real>(z: Complex<T>, v: Complex<T>) -> Result<T> {
    if !is_finite(z) {
        return Err(HypError::domain("non-finite point"));
    }
    let gap = one_minus_abs2(z.re, z.im);
    if gap <= T::zero() {
        return Err(HypError::domain(format!("{z} is not interior to the disc")));
    }
    Ok(v.norm() / gap)
}

/// Infinitesimal hyperbolic length of `v` at `w` in the right half-plane.
pub fn kappa_half<T: Real>(w: Complex<T>, v: Complex<T>) -> Result<T> {
    if !is_finite(w) {
        return Err(HypError::domain("non-finite point"));
    }
    if w.re <= T::zero() {
        return Err(HypError::domain(format!(
            "{w} is not interior to the half-plane"
        )));
    }
    Ok(v.norm() / (T::two() * w.re))
}

pub fn kappa<T: Real>(space: Space, point: Complex<T>, v: Complex<T>) -> Result<T> {
    match space {
        Space::Disc => kappa_disc(point, v),
        Space::HalfPlane => kappa_half(point, v),
    }
}

/// Cayley transform `z -> (1 + z) / (1 - z)` from the disc onto the half-plane.
pub fn cayley<T: Real>(z: DiscPoint<T>) -> HalfPlanePoint<T> {
    let v = z.value();
    let one = Complex::new(T::one(), T::zero());
    let (np, nm) = ((one + v).norm(), (one - v).norm());
    // C(z) = (1 - |z|^2 + 2 i Im z) / |1 - z|^2
    let theta = (T::two() * v.im).atan2(z.gap());
    let cos = z.gap() / (np * nm);
    HalfPlanePoint::with_cos(np.ln() - nm.ln(), theta, cos)
        .expect("Cayley image of a disc point is in the half-plane")
}

/// Inverse Cayley transform `w -> (w - 1) / (w + 1)`.
///
/// Orbit points very close to the boundary may round onto the unit circle in
/// Cartesian form; those are pulled to the nearest representable interior
/// point.
pub fn cayley_inv<T: Real>(w: HalfPlanePoint<T>) -> DiscPoint<T> {
    let one = Complex::new(T::one(), T::zero());
    let z = if w.log_rho() > T::zero() {
        let q = Complex::from_polar((-w.log_rho()).exp(), -w.theta());
        (one - q) / (one + q)
    } else {
        let p = w.to_complex();
        (p - one) / (p + one)
    };
    DiscPoint::guarded(z)
}

/// Hyperbolic length of a polyline, by 16-point Gauss–Legendre on each edge.
pub fn path_length<T: Real>(space: Space, polyline: &[Complex<T>]) -> Result<T> {
    if polyline.is_empty() {
        return Err(HypError::spec("polyline has no vertices"));
    }
    for p in polyline {
        kappa(space, *p, Complex::new(T::zero(), T::zero()))?;
    }
    let mut total = T::zero();
    for edge in polyline.windows(2) {
        let (a, b) = (edge[0], edge[1]);
        let d = b - a;
        if d.norm() == T::zero() {
            continue;
        }
        let density = |s: T| match space {
            Space::Disc => {
                let p = a + d * s;
                d.norm() / one_minus_abs2(p.re, p.im)
            }
            Space::HalfPlane => d.norm() / (T::two() * (a.re + d.re * s)),
        };
        total = total + gauss_legendre_16(&density, T::zero(), T::one());
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn dp(re: f64, im: f64) -> DiscPoint<f64> {
        DiscPoint::new(Complex::new(re, im)).unwrap()
    }

    fn hp(re: f64, im: f64) -> HalfPlanePoint<f64> {
        HalfPlanePoint::from_complex(Complex::new(re, im)).unwrap()
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega(dp(0.0, 0.0), dp(0.0, 0.0)), 0.0);
        assert_abs_diff_eq!(omega(dp(0.0, 0.0), dp(0.5, 0.0)), 0.5 * 3f64.ln(), epsilon = 1e-15);
        assert_eq!(omega(dp(0.5, 0.0), dp(0.0, 0.0)), omega(dp(0.0, 0.0), dp(0.5, 0.0)));
    }

    #[test]
    fn omega_matches_textbook_formula() {
        let (z, w) = (dp(0.3, -0.4), dp(-0.1, 0.6));
        let t = (z.value() - w.value()) / (Complex::new(1.0, 0.0) - z.value().conj() * w.value());
        let expected = 0.5 * ((1.0 + t.norm()) / (1.0 - t.norm())).ln();
        assert_abs_diff_eq!(omega(z, w), expected, epsilon = 1e-14);
    }

    #[test]
    fn k_half_examples() {
        assert_eq!(k_half(hp(1.0, 0.0), hp(1.0, 0.0)), 0.0);
        let e2 = std::f64::consts::E.powi(2);
        assert_abs_diff_eq!(k_half(hp(1.0, 0.0), hp(e2, 0.0)), 1.0, epsilon = 1e-15);
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert_abs_diff_eq!(k_half(hp(1.0, 0.0), hp(1.0, 1.0)), golden.ln(), epsilon = 1e-14);
    }

    #[test]
    fn k_half_matches_textbook_formula() {
        let (a, b) = (Complex::new(0.7f64, -2.0), Complex::new(3.0f64, 1.5));
        let q = ((a - b) / (a + b.conj())).norm();
        let expected = 0.5 * ((1.0 + q) / (1.0 - q)).ln();
        let got = k_half(hp(a.re, a.im), hp(b.re, b.im));
        assert_abs_diff_eq!(got, expected, epsilon = 1e-13);
    }

    #[test]
    fn k_half_branches_agree_at_crossover() {
        let w1 = HalfPlanePoint::new(0.0, 0.4).unwrap();
        let below = HalfPlanePoint::new(LOG_BRANCH_CROSSOVER - 1e-9, -0.7).unwrap();
        let above = HalfPlanePoint::new(LOG_BRANCH_CROSSOVER + 1e-9, -0.7).unwrap();
        assert!((k_half(w1, below) - k_half(w1, above)).abs() < 1e-8);
    }

    #[test]
    fn k_half_extreme_separation() {
        let w1 = HalfPlanePoint::new(0.0, 0.0).unwrap();
        let w2 = HalfPlanePoint::new(4e8, 0.2).unwrap();
        let got = k_half(w1, w2);
        // ½ ln(R) + ½ ln(1/cos θ) + O(1/R)
        let expected = 2e8 + 0.5 * (1.0 / 0.2f64.cos()).ln();
        assert!((got - expected).abs() < 1e-6, "{got}");
    }

    #[test]
    fn kappa_examples() {
        let one = Complex::new(1.0, 0.0);
        assert_eq!(kappa(Space::Disc, Complex::new(0.0, 0.0), one).unwrap(), 1.0);
        assert_abs_diff_eq!(kappa(Space::Disc, Complex::new(0.5, 0.0), one).unwrap(), 4.0 / 3.0);
        assert_eq!(kappa(Space::HalfPlane, one, one).unwrap(), 0.5);
        assert!(kappa(Space::Disc, one, one).is_err());
        assert!(kappa(Space::HalfPlane, Complex::new(0.0, 3.0), one).is_err());
    }

    #[test]
    fn kappa_is_homogeneous() {
        let z = Complex::new(0.2, 0.1);
        let v = Complex::new(0.3, -0.4);
        let k1 = kappa(Space::Disc, z, v).unwrap();
        let k3 = kappa(Space::Disc, z, v * 3.0).unwrap();
        assert_abs_diff_eq!(k3, 3.0 * k1, epsilon = 1e-15);
    }

    #[test]
    fn cayley_examples() {
        let c0 = cayley(dp(0.0, 0.0));
        assert_eq!((c0.log_rho(), c0.theta()), (0.0, 0.0));
        // i is on the boundary; a nearby interior point maps near i
        let ci = cayley(dp(0.0, 1.0 - 1e-9)).to_complex();
        assert!((ci - Complex::new(0.0, 1.0)).norm() < 1e-8);
        let z = dp(0.3, 0.2);
        let back = cayley_inv(cayley(z));
        assert!((back.value() - z.value()).norm() < 1e-12);
    }

    #[test]
    fn cayley_is_an_isometry() {
        let (z1, z2) = (dp(0.9, -0.3), dp(-0.2, 0.55));
        assert!((k_half(cayley(z1), cayley(z2)) - omega(z1, z2)).abs() < 1e-10);
    }

    #[test]
    fn cayley_inv_of_huge_point_is_near_one() {
        let w = HalfPlanePoint::new(1e6, 0.0).unwrap();
        let z = cayley_inv(w);
        assert!(z.gap() > 0.0);
        assert!((z.value() - Complex::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn path_length_examples() {
        let p = Complex::new(0.2, 0.1);
        assert_eq!(path_length(Space::Disc, &[p, p]).unwrap(), 0.0);
        let e = std::f64::consts::E;
        let radial: Vec<_> = (0..=10_000)
            .map(|k| Complex::new(1.0 + (e - 1.0) * k as f64 / 10_000.0, 0.0))
            .collect();
        assert!((path_length(Space::HalfPlane, &radial).unwrap() - 0.5).abs() < 1e-6);
        let dir = Complex::from_polar(1.0, std::f64::consts::FRAC_PI_3);
        let ray: Vec<_> = (0..=100)
            .map(|k| dir * (1.0 + (e - 1.0) * k as f64 / 100.0))
            .collect();
        assert!((path_length(Space::HalfPlane, &ray).unwrap() - 1.0).abs() < 1e-5);
        assert!(path_length(Space::HalfPlane, &[Complex::new(-1.0, 0.0)]).is_err());
        assert!(path_length::<f64>(Space::Disc, &[]).is_err());
    }

    #[test]
    fn f32_instantiation() {
        let z = DiscPoint::new(Complex::new(0.5f32, 0.0)).unwrap();
        let d = omega(DiscPoint::origin(), z);
        assert!((d - 0.5 * 3f32.ln()).abs() < 1e-6);
    }
}
