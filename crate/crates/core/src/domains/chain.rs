//! Compositions of elementary conformal maps with closed-form inverses and
//! derivatives.
//!
//! Values flowing through a chain may be carried in polar-logarithmic form,
//! so an exponential link can produce `e^{10^8}` without overflowing.

use num_complex::Complex;

use crate::error::{HypError, Result};
use crate::hyp_core::HalfPlanePoint;
use crate::scalar::{one_minus_abs2, wrap_angle, Real};

/// Above this `ln|w|` values are kept in polar-logarithmic form.
const POLAR_THRESHOLD: f64 = 30.0;

/// A complex number, either Cartesian or as `(ln|w|, arg w)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PlaneValue<T> {
    Cart(Complex<T>),
    Polar { log_abs: T, arg: T },
}

impl<T: Real> PlaneValue<T> {
    pub fn log_abs(&self) -> T {
        match *self {
            PlaneValue::Cart(z) => z.norm().ln(),
            PlaneValue::Polar { log_abs, .. } => log_abs,
        }
    }

    pub fn arg(&self) -> T {
        match *self {
            PlaneValue::Cart(z) => z.arg(),
            PlaneValue::Polar { arg, .. } => arg,
        }
    }

    /// Cartesian value; may overflow for polar values with huge modulus.
    pub fn to_complex(&self) -> Complex<T> {
        match *self {
            PlaneValue::Cart(z) => z,
            PlaneValue::Polar { log_abs, arg } => Complex::from_polar(log_abs.exp(), arg),
        }
    }

    fn is_large(&self) -> bool {
        match *self {
            PlaneValue::Cart(_) => false,
            PlaneValue::Polar { log_abs, .. } => log_abs > T::lit(POLAR_THRESHOLD),
        }
    }

    /// Interpret as a right half-plane point.
    pub fn to_halfplane(&self) -> Result<HalfPlanePoint<T>> {
        match *self {
            PlaneValue::Cart(z) => HalfPlanePoint::from_complex(z),
            PlaneValue::Polar { log_abs, arg } => HalfPlanePoint::new(log_abs, wrap_angle(arg)),
        }
    }

    pub fn from_halfplane(w: HalfPlanePoint<T>) -> Self {
        PlaneValue::Polar {
            log_abs: w.log_rho(),
            arg: w.theta(),
        }
    }
}

/// One elementary conformal map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MapLink<T> {
    /// `w -> a w + b`, `a != 0`.
    Affine { a: Complex<T>, b: Complex<T> },
    /// Principal branch of `w -> w^gamma` on the sector
    /// `arg_lo < arg w < arg_hi`.
    Power { gamma: T, arg_lo: T, arg_hi: T },
    /// `z -> -i e^{c z}`.
    ExpScale { c: Complex<T> },
    /// `z -> (1 + z) / (1 - z)`.
    Cayley,
    /// `w -> (w - 1) / (w + 1)`.
    CayleyInv,
}

/// Image of the end of a domain, as tracked through a chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Ideal<T> {
    /// The point at infinity approached along direction `arg`.
    Infinity { arg: T },
    Finite(Complex<T>),
}

fn branch_slack<T: Real>() -> T {
    T::lit(1e-12)
}

impl<T: Real> MapLink<T> {
    pub fn power(gamma: T, arg_lo: T, arg_hi: T) -> Result<Self> {
        if !(gamma > T::zero()) || !gamma.is_finite() {
            return Err(HypError::spec(format!("power exponent {gamma} must be positive")));
        }
        if !(arg_lo < arg_hi) || arg_lo < -T::PI() || arg_hi > T::PI() {
            return Err(HypError::spec(format!(
                "power link input sector ({arg_lo}, {arg_hi}) leaves the principal branch (-pi, pi)"
            )));
        }
        Ok(MapLink::Power {
            gamma,
            arg_lo,
            arg_hi,
        })
    }

    pub fn forward(&self, v: PlaneValue<T>) -> Result<PlaneValue<T>> {
        match *self {
            MapLink::Affine { a, b } => Ok(affine(v, a, b)),
            MapLink::Power {
                gamma,
                arg_lo,
                arg_hi,
            } => {
                let arg = v.arg();
                if arg <= arg_lo - branch_slack() || arg >= arg_hi + branch_slack() {
                    return Err(HypError::domain(format!(
                        "argument {arg} outside the power link sector ({arg_lo}, {arg_hi})"
                    )));
                }
                if gamma == T::one() {
                    return Ok(v);
                }
                Ok(PlaneValue::Polar {
                    log_abs: gamma * v.log_abs(),
                    arg: gamma * arg,
                })
            }
            MapLink::ExpScale { c } => {
                let z = cart(v, "exponential link input")?;
                let e = c * z;
                Ok(PlaneValue::Polar {
                    log_abs: e.re,
                    arg: wrap_angle(e.im - T::FRAC_PI_2()),
                })
            }
            MapLink::Cayley => {
                let z = cart(v, "Cayley link input")?;
                let one = Complex::new(T::one(), T::zero());
                Ok(PlaneValue::Polar {
                    log_abs: (one + z).norm().ln() - (one - z).norm().ln(),
                    arg: (T::two() * z.im).atan2(one_minus_abs2(z.re, z.im)),
                })
            }
            MapLink::CayleyInv => Ok(PlaneValue::Cart(cayley_inv_value(v))),
        }
    }

    pub fn inverse(&self, v: PlaneValue<T>) -> Result<PlaneValue<T>> {
        match *self {
            MapLink::Affine { a, b } => {
                let ia = Complex::new(T::one(), T::zero()) / a;
                Ok(affine(v, ia, -b * ia))
            }
            MapLink::Power {
                gamma,
                arg_lo,
                arg_hi,
            } => {
                let arg = v.arg();
                if arg <= gamma * arg_lo - branch_slack() || arg >= gamma * arg_hi + branch_slack()
                {
                    return Err(HypError::domain(format!(
                        "argument {arg} outside the image sector of the power link"
                    )));
                }
                if gamma == T::one() {
                    return Ok(v);
                }
                Ok(PlaneValue::Polar {
                    log_abs: v.log_abs() / gamma,
                    arg: arg / gamma,
                })
            }
            MapLink::ExpScale { c } => {
                // -i e^{cz} = w  <=>  c z = Log(i w)
                let log_iw = Complex::new(v.log_abs(), wrap_angle(v.arg() + T::FRAC_PI_2()));
                Ok(PlaneValue::Cart(log_iw / c))
            }
            MapLink::Cayley => Ok(PlaneValue::Cart(cayley_inv_value(v))),
            MapLink::CayleyInv => MapLink::Cayley.forward(v),
        }
    }

    /// `ln |f'(v)|`.
    pub fn log_abs_derivative(&self, v: PlaneValue<T>) -> Result<T> {
        Ok(match *self {
            MapLink::Affine { a, .. } => a.norm().ln(),
            MapLink::Power { gamma, .. } => gamma.ln() + (gamma - T::one()) * v.log_abs(),
            MapLink::ExpScale { c } => {
                let z = cart(v, "exponential link input")?;
                c.norm().ln() + (c * z).re
            }
            MapLink::Cayley => {
                let z = cart(v, "Cayley link input")?;
                T::LN_2() - T::two() * (Complex::new(T::one(), T::zero()) - z).norm().ln()
            }
            MapLink::CayleyInv => {
                let w = cart(v, "inverse Cayley link input")?;
                T::LN_2() - T::two() * (w + Complex::new(T::one(), T::zero())).norm().ln()
            }
        })
    }

    /// `f'(z)` in Cartesian form.
    pub fn derivative(&self, z: Complex<T>) -> Complex<T> {
        let one = Complex::new(T::one(), T::zero());
        match *self {
            MapLink::Affine { a, .. } => a,
            MapLink::Power { gamma, .. } => {
                Complex::from_polar(gamma, T::zero()) * z.powf(gamma - T::one())
            }
            MapLink::ExpScale { c } => c * Complex::new(T::zero(), -T::one()) * (c * z).exp(),
            MapLink::Cayley => Complex::new(T::two(), T::zero()) / ((one - z) * (one - z)),
            MapLink::CayleyInv => Complex::new(T::two(), T::zero()) / ((z + one) * (z + one)),
        }
    }

    pub fn inverted(&self) -> Result<Self> {
        Ok(match *self {
            MapLink::Affine { a, b } => {
                let ia = Complex::new(T::one(), T::zero()) / a;
                MapLink::Affine { a: ia, b: -b * ia }
            }
            MapLink::Power {
                gamma,
                arg_lo,
                arg_hi,
            } => MapLink::power(T::one() / gamma, gamma * arg_lo, gamma * arg_hi)?,
            MapLink::Cayley => MapLink::CayleyInv,
            MapLink::CayleyInv => MapLink::Cayley,
            MapLink::ExpScale { .. } => {
                return Err(HypError::unsupported(
                    "logarithm link is not a chain primitive; apply the exponential link in reverse",
                ))
            }
        })
    }

    /// Image of an ideal point (an end of the domain) under this link.
    pub fn end_image(&self, e: Ideal<T>) -> Result<Ideal<T>> {
        Ok(match (self, e) {
            (MapLink::Affine { a, .. }, Ideal::Infinity { arg }) => Ideal::Infinity {
                arg: wrap_angle(arg + a.arg()),
            },
            (MapLink::Power { gamma, .. }, Ideal::Infinity { arg }) => Ideal::Infinity {
                arg: *gamma * arg,
            },
            (MapLink::ExpScale { c }, Ideal::Infinity { arg }) => {
                let growth = (*c * Complex::from_polar(T::one(), arg)).re;
                if growth < T::zero() {
                    Ideal::Finite(Complex::new(T::zero(), T::zero()))
                } else if growth > T::zero() {
                    let rot = (*c * Complex::from_polar(T::one(), arg)).im;
                    Ideal::Infinity {
                        arg: wrap_angle(rot - T::FRAC_PI_2()),
                    }
                } else {
                    return Err(HypError::unsupported(
                        "end direction is tangent to the exponential's level lines",
                    ));
                }
            }
            (MapLink::Cayley, Ideal::Infinity { .. }) => {
                Ideal::Finite(Complex::new(-T::one(), T::zero()))
            }
            (MapLink::CayleyInv, Ideal::Infinity { .. }) => {
                Ideal::Finite(Complex::new(T::one(), T::zero()))
            }
            (MapLink::Cayley, Ideal::Finite(z)) if z == Complex::new(T::one(), T::zero()) => {
                Ideal::Infinity { arg: T::zero() }
            }
            (MapLink::CayleyInv, Ideal::Finite(w)) if w == Complex::new(-T::one(), T::zero()) => {
                Ideal::Infinity { arg: T::zero() }
            }
            (MapLink::Power { gamma, .. }, Ideal::Finite(z)) if z.norm() == T::zero() => {
                let _ = gamma;
                Ideal::Finite(z)
            }
            (_, Ideal::Finite(z)) => Ideal::Finite(self.forward(PlaneValue::Cart(z))?.to_complex()),
        })
    }
}

fn cart<T: Real>(v: PlaneValue<T>, what: &str) -> Result<Complex<T>> {
    let z = v.to_complex();
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(HypError::domain(format!("{what} overflows Cartesian form")))
    }
}

fn affine<T: Real>(v: PlaneValue<T>, a: Complex<T>, b: Complex<T>) -> PlaneValue<T> {
    if v.is_large() {
        // a w (1 + b / (a w))
        let inv = Complex::from_polar((-v.log_abs()).exp(), -v.arg());
        let corr = Complex::new(T::one(), T::zero()) + b / a * inv;
        PlaneValue::Polar {
            log_abs: a.norm().ln() + v.log_abs() + corr.norm().ln(),
            arg: wrap_angle(a.arg() + v.arg() + corr.arg()),
        }
    } else {
        PlaneValue::Cart(a * v.to_complex() + b)
    }
}

fn cayley_inv_value<T: Real>(v: PlaneValue<T>) -> Complex<T> {
    let one = Complex::new(T::one(), T::zero());
    if v.log_abs() > T::zero() {
        let q = Complex::from_polar((-v.log_abs()).exp(), -v.arg());
        (one - q) / (one + q)
    } else {
        let w = v.to_complex();
        (w - one) / (w + one)
    }
}

/// An invertible composition of [`MapLink`]s, applied first to last.
#[derive(Debug, Clone, PartialEq)]
pub struct RiemannMapChain<T> {
    links: Vec<MapLink<T>>,
}

impl<T: Real> RiemannMapChain<T> {
    pub fn new(links: Vec<MapLink<T>>) -> Self {
        Self { links }
    }

    pub fn links(&self) -> &[MapLink<T>] {
        &self.links
    }

    pub fn then(mut self, link: MapLink<T>) -> Self {
        self.links.push(link);
        self
    }

    pub fn forward_value(&self, v: PlaneValue<T>) -> Result<PlaneValue<T>> {
        self.links.iter().try_fold(v, |acc, l| l.forward(acc))
    }

    pub fn forward(&self, z: Complex<T>) -> Result<PlaneValue<T>> {
        self.forward_value(PlaneValue::Cart(z))
    }

    pub fn inverse_value(&self, v: PlaneValue<T>) -> Result<PlaneValue<T>> {
        self.links.iter().rev().try_fold(v, |acc, l| l.inverse(acc))
    }

    /// `ln |F'(z)|` by the chain rule.
    pub fn log_abs_derivative(&self, z: Complex<T>) -> Result<T> {
        let mut v = PlaneValue::Cart(z);
        let mut acc = T::zero();
        for l in &self.links {
            acc = acc + l.log_abs_derivative(v)?;
            v = l.forward(v)?;
        }
        Ok(acc)
    }

    /// `F'(z)` by the chain rule, in Cartesian form.
    pub fn derivative(&self, z: Complex<T>) -> Result<Complex<T>> {
        let mut v = PlaneValue::Cart(z);
        let mut acc = Complex::new(T::one(), T::zero());
        for l in &self.links {
            acc = acc * l.derivative(cart(v, "chain value")?);
            v = l.forward(v)?;
        }
        Ok(acc)
    }

    pub fn end_image(&self, e: Ideal<T>) -> Result<Ideal<T>> {
        self.links.iter().try_fold(e, |acc, l| l.end_image(acc))
    }
}
