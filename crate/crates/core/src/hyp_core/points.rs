use num_complex::Complex;

use crate::error::{HypError, Result};
use crate::scalar::{one_minus_abs2, Real};

/// A point of the complex plane.
pub type ComplexPoint<T> = Complex<T>;

pub(crate) fn is_finite<T: Real>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// A point of the open unit disc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscPoint<T> {
    value: Complex<T>,
}

impl<T: Real> DiscPoint<T> {
    pub fn new(value: Complex<T>) -> Result<Self> {
        if !is_finite(value) {
            return Err(HypError::domain("non-finite disc point"));
        }
        if one_minus_abs2(value.re, value.im) <= T::zero() {
            return Err(HypError::domain(format!(
                "point {value} is not inside the unit disc"
            )));
        }
        Ok(Self { value })
    }

    pub fn origin() -> Self {
        Self {
            value: Complex::new(T::zero(), T::zero()),
        }
    }

    /// Point at hyperbolic distance `dist` from the origin in direction `angle`.
    pub fn from_hyperbolic_polar(dist: T, angle: T) -> Self {
        let r = dist.abs().tanh();
        Self::guarded(Complex::from_polar(r, angle))
    }

    /// Builds a disc point from a value that is mathematically inside the
    /// disc but may have rounded onto (or past) the unit circle; such values
    /// are pulled radially to the largest representable modulus below 1.
    pub(crate) fn guarded(value: Complex<T>) -> Self {
        if one_minus_abs2(value.re, value.im) > T::zero() {
            return Self { value };
        }
        let arg = value.arg();
        let mut r = T::one() - T::epsilon() * T::half();
        loop {
            let v = Complex::from_polar(r, arg);
            if one_minus_abs2(v.re, v.im) > T::zero() {
                return Self { value: v };
            }
            r = r - T::epsilon();
        }
    }

    pub fn value(&self) -> Complex<T> {
        self.value
    }

    /// `1 - |z|^2`, computed without cancellation.
    pub fn gap(&self) -> T {
        one_minus_abs2(self.value.re, self.value.im)
    }
}

/// A point `rho * e^{i theta}` of the right half-plane, stored as
/// `(ln rho, theta)` so that orbit points with astronomically large or small
/// modulus stay representable. `cos theta` is kept separately: near
/// `theta = ±pi/2` it cannot be recovered from `theta` to full precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlanePoint<T> {
    log_rho: T,
    theta: T,
    cos: T,
}

impl<T: Real> HalfPlanePoint<T> {
    pub fn new(log_rho: T, theta: T) -> Result<Self> {
        if !log_rho.is_finite() || !theta.is_finite() {
            return Err(HypError::domain("non-finite half-plane coordinates"));
        }
        if theta.abs() >= T::FRAC_PI_2() {
            return Err(HypError::domain(format!(
                "argument {theta} outside (-pi/2, pi/2)"
            )));
        }
        Ok(Self {
            log_rho,
            theta,
            cos: theta.cos(),
        })
    }

    /// Like [`Self::new`] with an independently known `cos theta`.
    /// A `theta` that rounded onto `±pi/2` is pulled just inside, since
    /// `cos` carries the precision there.
    pub(crate) fn with_cos(log_rho: T, theta: T, cos: T) -> Result<Self> {
        if !(cos > T::zero()) || !cos.is_finite() {
            return Err(HypError::domain(format!("cos theta = {cos} must be positive")));
        }
        let edge = T::FRAC_PI_2() * (T::one() - T::epsilon());
        let theta = if theta.abs() > edge {
            edge.copysign(theta)
        } else {
            theta
        };
        let p = Self::new(log_rho, theta)?;
        Ok(Self { cos, ..p })
    }

    /// The positive real point `rho`.
    pub fn real(rho: T) -> Result<Self> {
        if !(rho > T::zero()) || !rho.is_finite() {
            return Err(HypError::domain(format!("{rho} is not a positive real")));
        }
        Ok(Self {
            log_rho: rho.ln(),
            theta: T::zero(),
            cos: T::one(),
        })
    }

    /// `e^{log_rho}` on the positive real axis.
    pub fn from_log_real(log_rho: T) -> Self {
        Self {
            log_rho,
            theta: T::zero(),
            cos: T::one(),
        }
    }

    pub fn from_complex(w: Complex<T>) -> Result<Self> {
        if !is_finite(w) {
            return Err(HypError::domain("non-finite half-plane point"));
        }
        if !(w.re > T::zero()) {
            return Err(HypError::domain(format!(
                "point {w} is not in the right half-plane"
            )));
        }
        let r = w.norm();
        Self::with_cos(r.ln(), w.im.atan2(w.re), w.re / r)
    }

    pub fn log_rho(&self) -> T {
        self.log_rho
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn rho(&self) -> T {
        self.log_rho.exp()
    }

    pub fn cos_theta(&self) -> T {
        self.cos
    }

    /// `ln Re w`.
    pub fn log_re(&self) -> T {
        self.log_rho + self.cos.ln()
    }

    /// Cartesian value; overflows to infinity for huge moduli.
    pub fn to_complex(&self) -> Complex<T> {
        Complex::from_polar(self.rho(), self.theta)
    }

    /// `1 / w`, an automorphism of the half-plane fixing `1`.
    pub fn reciprocal(&self) -> Self {
        Self {
            log_rho: -self.log_rho,
            theta: -self.theta,
            cos: self.cos,
        }
    }

    /// `a * w + i b` for real `a > 0`, `b`: the automorphisms fixing infinity.
    pub fn real_affine(&self, a: T, b: T) -> Result<Self> {
        if !(a > T::zero()) || !b.is_finite() {
            return Err(HypError::spec("real affine map needs a > 0"));
        }
        let big = T::lit(30.0);
        if self.log_rho > big {
            // a w (1 + i b / (a w))
            let q = Complex::from_polar((-self.log_rho).exp() * b / a, -self.theta);
            let corr = Complex::new(T::one(), T::zero()) + Complex::new(T::zero(), T::one()) * q;
            // Re(a w + i b) = a Re w
            let m = corr.norm();
            Self::with_cos(
                a.ln() + self.log_rho + m.ln(),
                self.theta + corr.arg(),
                self.cos / m,
            )
        } else {
            let w = self.to_complex() * a + Complex::new(T::zero(), b);
            Self::from_complex(w)
        }
    }
}
