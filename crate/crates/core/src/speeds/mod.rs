//! Total, orthogonal and tangential speeds of orbits.
//!
//! With the orbit in the half-plane frame (Denjoy–Wolff point at `∞`, orbit
//! started at the preimage of `1`) and `W_t = ρ_t e^{iθ_t}`:
//!
//! * `v(t)  = k(1, W_t)`
//! * `v°(t) = k(1, ρ_t) = ½ |log ρ_t|`
//! * `vᵀ(t) = k(W_t, ρ_t) = ½ asinh(tan |θ_t|)`

mod conjugation;
mod fit;
mod nontangential;
mod surrogate;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{HypError, Result};
use crate::hyp_core::{dist_to_real_axis, k_half, DiscPoint, HalfPlanePoint};
use crate::scalar::Real;
use crate::semigroups::KoenigsSemigroup;

pub use conjugation::{Conjugated, OrbitFrom};
pub use fit::{fit_asymptotic, fit_speeds, AsymptoticFit, Basis, SpeedColumn};
pub use nontangential::{nontangential_ratio, nontangential_report, NontangentialReport, Verdict};
pub use surrogate::{surrogate_at, surrogate_speeds, SurrogateSample, SURROGATE_BOUNDS};

/// Speeds at one time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpeedSample<T> {
    pub t: T,
    pub v: T,
    pub v_o: T,
    pub v_t: T,
    pub log_rho: T,
    pub theta: T,
}

impl<T: Real> SpeedSample<T> {
    /// Speeds of the frame point `w` reached at time `t`.
    pub fn from_frame(t: T, w: HalfPlanePoint<T>) -> Self {
        Self {
            t,
            v: k_half(HalfPlanePoint::from_log_real(T::zero()), w),
            v_o: T::half() * w.log_rho().abs(),
            v_t: dist_to_real_axis(w),
            log_rho: w.log_rho(),
            theta: w.theta(),
        }
    }
}

/// Anything that yields an orbit in the half-plane frame: the orbit starts
/// at `1` (the image of the reference point `0`) and converges to `∞`.
pub trait OrbitModel<T: Real>: Sync {
    fn frame_point(&self, t: T) -> Result<HalfPlanePoint<T>>;
}

impl<T: Real> OrbitModel<T> for KoenigsSemigroup<T> {
    fn frame_point(&self, t: T) -> Result<HalfPlanePoint<T>> {
        self.orbit_halfplane(t)
    }
}

fn check_grid<T: Real>(grid: &[T]) -> Result<()> {
    if grid.iter().any(|t| !(t.is_finite() && *t >= T::zero())) {
        return Err(HypError::domain("grid times must be finite and nonnegative"));
    }
    if grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(HypError::domain("grid must be sorted"));
    }
    Ok(())
}

/// Exact speeds of the orbit of `0` at every grid time (in parallel).
pub fn sample_speeds<T: Real, M: OrbitModel<T>>(model: &M, grid: &[T]) -> Result<Vec<SpeedSample<T>>> {
    check_grid(grid)?;
    grid.par_iter()
        .map(|&t| Ok(SpeedSample::from_frame(t, model.frame_point(t)?)))
        .collect()
}

/// Speeds of `φ_t(z)` measured from `0`: `ω(0, φ_t(z))` and its split along
/// the diameter through the Denjoy–Wolff point.
pub fn sample_speeds_from<T: Real>(
    sg: &KoenigsSemigroup<T>,
    z: DiscPoint<T>,
    grid: &[T],
) -> Result<Vec<SpeedSample<T>>> {
    sample_speeds(&OrbitFrom::new(sg, z), grid)
}

/// `n` geometrically spaced times from `t_min > 0` to `t_max`.
pub fn geometric_grid<T: Real>(t_min: T, t_max: T, n: usize) -> Result<Vec<T>> {
    if !(t_min > T::zero()) || !(t_max > t_min) || !t_max.is_finite() || n < 2 {
        return Err(HypError::domain(format!(
            "geometric grid needs 0 < t_min < t_max and n >= 2, got [{t_min}, {t_max}], n={n}"
        )));
    }
    let (l0, l1) = (t_min.ln(), t_max.ln());
    let step = (l1 - l0) / T::lit((n - 1) as f64);
    let mut g: Vec<T> = (0..n).map(|k| (l0 + step * T::lit(k as f64)).exp()).collect();
    g[0] = t_min;
    g[n - 1] = t_max;
    Ok(g)
}

/// `n` evenly spaced times from `t_min >= 0` to `t_max`.
pub fn linear_grid<T: Real>(t_min: T, t_max: T, n: usize) -> Result<Vec<T>> {
    if !(t_min >= T::zero()) || !(t_max > t_min) || !t_max.is_finite() || n < 2 {
        return Err(HypError::domain(format!(
            "linear grid needs 0 <= t_min < t_max and n >= 2, got [{t_min}, {t_max}], n={n}"
        )));
    }
    let step = (t_max - t_min) / T::lit((n - 1) as f64);
    let mut g: Vec<T> = (0..n).map(|k| t_min + step * T::lit(k as f64)).collect();
    g[n - 1] = t_max;
    Ok(g)
}

/// 512 geometric points on `[1, 1e8]`.
pub fn default_grid<T: Real>() -> Vec<T> {
    geometric_grid(T::one(), T::lit(1e8), 512).expect("valid default grid")
}

/// Top two decades of a grid ending at `t_max`.
pub fn default_window<T: Real>(t_max: T) -> (T, T) {
    (t_max / T::lit(100.0), t_max)
}
