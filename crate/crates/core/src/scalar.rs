//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` literal.
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("f64 literal representable")
    }

    fn half() -> Self {
        Self::lit(0.5)
    }

    fn two() -> Self {
        Self::lit(2.0)
    }

    fn to_f64_lossy(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `a*a` as an unevaluated sum `(hi, lo)`.
#[inline]
pub(crate) fn square_exact<T: Real>(a: T) -> (T, T) {
    let hi = a * a;
    let lo = a.mul_add(a, -hi);
    (hi, lo)
}

/// `1 - (x*x + y*y)` with compensated arithmetic.
///
/// The result keeps full relative precision even when `x + iy` lies within
/// a few ulps of the unit circle, as long as `x`, `y` themselves are exact.
pub(crate) fn one_minus_abs2<T: Real>(x: T, y: T) -> T {
    let (xh, xl) = square_exact(x);
    let (yh, yl) = square_exact(y);
    // Order the big terms so the leading subtraction is exact (Sterbenz).
    let (big, small) = if xh >= yh { (xh, yh) } else { (yh, xh) };
    let lead = T::one() - big;
    lead - small - xl - yl
}

/// Reduce an angle into `(-pi, pi]`.
pub(crate) fn wrap_angle<T: Real>(theta: T) -> T {
    let pi = T::PI();
    let two_pi = pi + pi;
    let mut a = theta % two_pi;
    if a > pi {
        a = a - two_pi;
    } else if a <= -pi {
        a = a + two_pi;
    }
    a
}
