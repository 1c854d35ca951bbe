use num_complex::Complex;

use super::points::DiscPoint;
use crate::scalar::Real;

/// `M(z) = e^{i phase} (a - z) / (1 - conj(a) z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscAutomorphism<T> {
    a: DiscPoint<T>,
    phase: T,
}

impl<T: Real> DiscAutomorphism<T> {
    pub fn new(a: DiscPoint<T>, phase: T) -> Self {
        Self { a, phase }
    }

    /// `z -> e^{i phase} z`.
    pub fn rotation(phase: T) -> Self {
        Self {
            a: DiscPoint::origin(),
            phase: phase + T::PI(),
        }
    }

    pub fn a(&self) -> DiscPoint<T> {
        self.a
    }

    pub fn phase(&self) -> T {
        self.phase
    }

    fn eval(&self, z: Complex<T>) -> Complex<T> {
        let a = self.a.value();
        let one = Complex::new(T::one(), T::zero());
        Complex::from_polar(T::one(), self.phase) * (a - z) / (one - a.conj() * z)
    }

    pub fn apply(&self, z: DiscPoint<T>) -> DiscPoint<T> {
        DiscPoint::guarded(self.eval(z.value()))
    }

    /// Image of a boundary point (for unimodular `z` the result is unimodular).
    pub fn apply_boundary(&self, z: Complex<T>) -> Complex<T> {
        let w = self.eval(z);
        w / w.norm()
    }

    /// `M'(z) = e^{i phase} (|a|^2 - 1) / (1 - conj(a) z)^2`.
    pub fn derivative(&self, z: Complex<T>) -> Complex<T> {
        let a = self.a.value();
        let one = Complex::new(T::one(), T::zero());
        let d = one - a.conj() * z;
        Complex::from_polar(-self.a.gap(), self.phase) / (d * d)
    }

    pub fn inverse(&self) -> Self {
        let b = self.a.value() * Complex::from_polar(T::one(), self.phase);
        Self {
            a: DiscPoint::guarded(b),
            phase: -self.phase,
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Self {
        // zero of the composite: inner^{-1}(self^{-1}(0)) = inner^{-1}(a_self)
        let a = inner.inverse().apply(self.a);
        let zero = Complex::new(T::zero(), T::zero());
        let d = self.derivative(inner.eval(zero)) * inner.derivative(zero);
        // M'(0) = -e^{i phase} (1 - |a|^2)
        let phase = (-d).arg();
        Self { a, phase }
    }
}
