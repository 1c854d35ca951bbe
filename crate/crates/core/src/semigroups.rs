//! Non-elliptic semigroups given by their Koenigs model `(Ω, h, z + it)`.
//!
//! `h = F⁻¹ ∘ C` where `C` is the Cayley map and `F` the closed-form map of
//! `Ω` onto the right half-plane, so `h(0)` is the domain's base point.
//! Orbits are evaluated in the *frame*: the half-plane picture rotated so
//! that the Denjoy–Wolff point sits at `∞`.

use num_complex::Complex;

use crate::domains::{to_halfplane, DomainKind, DomainSpec, Ideal, MapLink, PlaneValue, RiemannMapChain};
use crate::error::{HypError, Result};
use crate::hyp_core::{cayley, cayley_inv, k_half, ComplexPoint, DiscPoint, HalfPlanePoint};
use crate::scalar::Real;

/// Type of a non-elliptic semigroup.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Classification<T> {
    Hyperbolic { lambda: T },
    ParabolicPositiveStep,
    ParabolicZeroStep,
}

impl<T: Real> Classification<T> {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::Hyperbolic { .. } => "hyperbolic",
            Classification::ParabolicPositiveStep => "parabolic-positive-step",
            Classification::ParabolicZeroStep => "parabolic-zero-step",
        }
    }
}

/// Classify the semigroup whose Koenigs domain is `domain`, from the
/// union of its downward translates.
pub fn classify<T: Real>(domain: &DomainSpec<T>) -> Classification<T> {
    match domain.kind() {
        DomainKind::Strip { r } => Classification::Hyperbolic {
            lambda: T::PI() / *r,
        },
        DomainKind::HalfPlaneRight { .. } => Classification::ParabolicPositiveStep,
        DomainKind::Koebe { .. } | DomainKind::Comb { .. } => Classification::ParabolicZeroStep,
        DomainKind::Sector { alpha, beta, .. } => {
            // Translating p + iV(α, β) downwards sweeps out a half-plane
            // exactly when one boundary ray is vertical (points straight up),
            // and the whole plane otherwise.
            let up = T::FRAC_PI_2();
            let rays = [up - *alpha, up + *beta];
            if rays.iter().any(|&a| a == up) {
                Classification::ParabolicPositiveStep
            } else {
                Classification::ParabolicZeroStep
            }
        }
    }
}

/// A semigroup `φ_t = h⁻¹(h + it)` built from its Koenigs domain.
#[derive(Debug, Clone)]
pub struct KoenigsSemigroup<T> {
    domain: DomainSpec<T>,
    chain: RiemannMapChain<T>,
    base: ComplexPoint<T>,
    classification: Classification<T>,
    /// The Denjoy–Wolff point is `-1` and the frame is `1/F`.
    flipped: bool,
}

impl<T: Real> KoenigsSemigroup<T> {
    pub fn new(domain: DomainSpec<T>) -> Result<Self> {
        let chain = to_halfplane(&domain)?;
        let base = domain.base_point();
        let end = chain.end_image(Ideal::Infinity {
            arg: T::FRAC_PI_2(),
        })?;
        let flipped = match end {
            Ideal::Infinity { .. } => false,
            Ideal::Finite(w) if w.norm() == T::zero() => true,
            Ideal::Finite(w) => {
                return Err(HypError::unsupported(format!(
                    "Denjoy-Wolff point maps to the finite boundary point {w}"
                )))
            }
        };
        let classification = classify(&domain);
        Ok(Self {
            domain,
            chain,
            base,
            classification,
            flipped,
        })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::new(DomainSpec::from_json(s)?)
    }

    pub fn domain(&self) -> &DomainSpec<T> {
        &self.domain
    }

    /// `F`, the map of `h(𝔻)` onto the right half-plane.
    pub fn chain(&self) -> &RiemannMapChain<T> {
        &self.chain
    }

    /// `h(0)`.
    pub fn base_model_point(&self) -> ComplexPoint<T> {
        self.base
    }

    pub fn classification(&self) -> Classification<T> {
        self.classification
    }

    /// Koenigs function `h(z)`.
    pub fn koenigs(&self, z: DiscPoint<T>) -> Result<PlaneValue<T>> {
        self.chain
            .inverse_value(PlaneValue::from_halfplane(cayley(z)))
    }

    fn frame(&self, w: HalfPlanePoint<T>) -> HalfPlanePoint<T> {
        if self.flipped {
            w.reciprocal()
        } else {
            w
        }
    }

    /// `C(τ̄ φ_t(z))`: the orbit in the half-plane frame with the
    /// Denjoy–Wolff point at infinity.
    pub fn orbit_frame(&self, z: DiscPoint<T>, t: T) -> Result<HalfPlanePoint<T>> {
        check_time(t)?;
        let hz = self.koenigs(z)?;
        if let DomainKind::Sector { p, alpha, beta } = *self.domain.kind() {
            let q = hz.to_complex();
            if (alpha == T::zero() || beta == T::zero()) && q.re.is_finite() && q.im.is_finite() {
                let phi = (beta - alpha) * T::half();
                let a = Complex::new(T::zero(), -T::one()) * Complex::from_polar(T::one(), -phi);
                return edge_sector_orbit(alpha + beta, phi, a * (q - p), t);
            }
        }
        let moved = MapLink::Affine {
            a: Complex::new(T::one(), T::zero()),
            b: Complex::new(T::zero(), t),
        }
        .forward(hz)?;
        Ok(self.frame(self.chain.forward_value(moved)?.to_halfplane()?))
    }

    /// Frame image of `φ_t(0)`, computed from `h(0) + it` directly.
    pub fn orbit_halfplane(&self, t: T) -> Result<HalfPlanePoint<T>> {
        check_time(t)?;
        if let DomainKind::Sector { alpha, beta, .. } = *self.domain.kind() {
            if alpha == T::zero() || beta == T::zero() {
                let one = Complex::new(T::one(), T::zero());
                return edge_sector_orbit(alpha + beta, (beta - alpha) * T::half(), one, t);
            }
        }
        let w = self.base + Complex::new(T::zero(), t);
        Ok(self.frame(self.chain.forward(w)?.to_halfplane()?))
    }

    fn from_frame(&self, w: HalfPlanePoint<T>) -> DiscPoint<T> {
        let d = cayley_inv(w);
        if self.flipped {
            DiscPoint::new(-d.value()).expect("negation keeps disc points inside")
        } else {
            d
        }
    }

    /// `φ_t(z)`. Near the boundary the result is the closest representable
    /// disc point; use [`Self::orbit_frame`] for full precision.
    pub fn orbit(&self, z: DiscPoint<T>, t: T) -> Result<DiscPoint<T>> {
        if t == T::zero() {
            return Ok(z);
        }
        Ok(self.from_frame(self.orbit_frame(z, t)?))
    }

    /// The Denjoy–Wolff point, `C⁻¹` of the image of the domain's end.
    pub fn denjoy_wolff(&self) -> ComplexPoint<T> {
        if self.flipped {
            Complex::new(-T::one(), T::zero())
        } else {
            Complex::new(T::one(), T::zero())
        }
    }

    /// `ω(φ_t(0), φ_{t+1}(0))`.
    pub fn step(&self, t: T) -> Result<T> {
        Ok(k_half(
            self.orbit_halfplane(t)?,
            self.orbit_halfplane(t + T::one())?,
        ))
    }
}

/// Frame point of `u + t e^{-iφ}` under the power map of a sector with one
/// vertical side and opening `s`, where `u` is the start after the affine link
/// (`u = 1` for the base point).
///
/// The orbit runs along the edge `arg = -φ`. Its angle `δ` to that edge is
/// taken from `(u + t e^{-iφ}) e^{iφ} = u e^{iφ} + t`, so it survives when
/// `t ε` exceeds it; then `W = z^{π/s}` has `cos arg W = |sin(π δ / s)|`.
fn edge_sector_orbit<T: Real>(s: T, phi: T, u: Complex<T>, t: T) -> Result<HalfPlanePoint<T>> {
    let gamma = T::PI() / s;
    let v = u * Complex::from_polar(T::one(), phi);
    let delta = v.im.atan2(v.re + t);
    let log_abs = (v.re + t).hypot(v.im).ln();
    HalfPlanePoint::with_cos(gamma * log_abs, gamma * (delta - phi), (gamma * delta).sin().abs())
}

fn check_time<T: Real>(t: T) -> Result<()> {
    if t >= T::zero() && t.is_finite() {
        Ok(())
    } else {
        Err(HypError::domain(format!("orbit time must be finite and >= 0, got {t}")))
    }
}

/// Free-function form of [`KoenigsSemigroup::orbit`].
pub fn orbit<T: Real>(sg: &KoenigsSemigroup<T>, z: DiscPoint<T>, t: T) -> Result<DiscPoint<T>> {
    sg.orbit(z, t)
}

/// Free-function form of [`KoenigsSemigroup::denjoy_wolff`].
pub fn denjoy_wolff<T: Real>(sg: &KoenigsSemigroup<T>) -> ComplexPoint<T> {
    sg.denjoy_wolff()
}
