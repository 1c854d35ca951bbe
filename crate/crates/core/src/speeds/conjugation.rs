use num_complex::Complex;

use super::OrbitModel;
use crate::error::Result;
use crate::hyp_core::{cayley, ComplexPoint, DiscAutomorphism, DiscPoint, HalfPlanePoint};
use crate::scalar::Real;
use crate::semigroups::KoenigsSemigroup;

/// The orbit of `z` (instead of `0`) under a semigroup, in its frame.
#[derive(Debug, Clone, Copy)]
pub struct OrbitFrom<'a, T> {
    sg: &'a KoenigsSemigroup<T>,
    z: DiscPoint<T>,
}

impl<'a, T: Real> OrbitFrom<'a, T> {
    pub fn new(sg: &'a KoenigsSemigroup<T>, z: DiscPoint<T>) -> Self {
        Self { sg, z }
    }
}

impl<T: Real> OrbitModel<T> for OrbitFrom<'_, T> {
    fn frame_point(&self, t: T) -> Result<HalfPlanePoint<T>> {
        self.sg.orbit_frame(self.z, t)
    }
}

/// The conjugated semigroup `ψ_t = M⁻¹ ∘ φ_t ∘ M`, orbit of `0`.
///
/// Its frame differs from that of `φ_t` by a half-plane automorphism fixing
/// `∞`, `W ↦ aW + ib`, determined by where it sends `1`.
#[derive(Debug, Clone, Copy)]
pub struct Conjugated<'a, T> {
    sg: &'a KoenigsSemigroup<T>,
    start: DiscPoint<T>,
    a: T,
    b: T,
    tau: ComplexPoint<T>,
}

impl<'a, T: Real> Conjugated<'a, T> {
    pub fn new(sg: &'a KoenigsSemigroup<T>, m: DiscAutomorphism<T>) -> Self {
        let inv = m.inverse();
        let tau = inv.apply_boundary(sg.denjoy_wolff());
        let p = inv.apply(DiscPoint::origin()).value();
        let q = DiscPoint::new(p * tau.conj()).unwrap_or(DiscPoint::origin());
        let w = cayley(q).to_complex();
        Self {
            sg,
            start: m.apply(DiscPoint::origin()),
            a: w.re,
            b: w.im,
            tau,
        }
    }

    /// Denjoy–Wolff point of the conjugated semigroup, `M⁻¹(τ)`.
    pub fn denjoy_wolff(&self) -> ComplexPoint<T> {
        self.tau
    }

    /// `M(0)`, the start of the underlying orbit of `φ_t`.
    pub fn start(&self) -> DiscPoint<T> {
        self.start
    }

    /// `ψ_t(0)` as a disc point.
    pub fn orbit_disc(&self, t: T) -> Result<DiscPoint<T>> {
        let w = self.frame_point(t)?;
        let d = crate::hyp_core::cayley_inv(w).value();
        Ok(DiscPoint::new(d * self.tau).unwrap_or_else(|_| {
            DiscPoint::from_hyperbolic_polar(T::lit(40.0), (d * self.tau).arg())
        }))
    }

    pub fn affine_coefficients(&self) -> Complex<T> {
        Complex::new(self.a, self.b)
    }
}

impl<T: Real> OrbitModel<T> for Conjugated<'_, T> {
    fn frame_point(&self, t: T) -> Result<HalfPlanePoint<T>> {
        self.sg.orbit_frame(self.start, t)?.real_affine(self.a, self.b)
    }
}
