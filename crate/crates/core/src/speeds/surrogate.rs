//! Euclidean surrogates of the speeds, with `η = φ_t(0)` rotated so the
//! Denjoy–Wolff point is `1`:
//!
//! * `s_total = ½ log 1/(1 - |η|)`
//! * `s_orth  = ½ log 1/|1 - η|`
//! * `s_tang  = ½ log |1 - η|/(1 - |η|)`
//!
//! Writing `η = (W - 1)/(W + 1)` turns these into logarithms of `|W ± 1|`
//! and `Re W`, which stay accurate however close `η` is to the circle.

use num_complex::Complex;
use serde::Serialize;

use super::{check_grid, OrbitModel, SpeedSample};
use crate::error::Result;
use crate::hyp_core::HalfPlanePoint;
use crate::scalar::Real;

/// Bounds on `|v - s_total|`, `|v° - s_orth|`, `|vᵀ - s_tang|` in units of
/// `log 2`.
pub const SURROGATE_BOUNDS: [f64; 3] = [0.5, 0.5, 1.5];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurrogateSample<T> {
    pub t: T,
    pub s_total: T,
    pub s_orth: T,
    pub s_tang: T,
    /// `v - s_total`.
    pub dev_total: T,
    /// `v° - s_orth`.
    pub dev_orth: T,
    /// `vᵀ - s_tang`.
    pub dev_tang: T,
    /// `Re η >= 0` holds here and at every later grid time.
    pub past_threshold: bool,
}

impl<T: Real> SurrogateSample<T> {
    /// Whether all three deviations are within [`SURROGATE_BOUNDS`] plus `tol`.
    pub fn within_bounds(&self, tol: T) -> bool {
        self.margins(tol).iter().all(|m| *m >= T::zero())
    }

    /// Signed slack of the three bounds (negative means violated).
    pub fn margins(&self, tol: T) -> [T; 3] {
        let ln2 = T::LN_2();
        let devs = [self.dev_total, self.dev_orth, self.dev_tang];
        let mut out = [T::zero(); 3];
        for k in 0..3 {
            out[k] = T::lit(SURROGATE_BOUNDS[k]) * ln2 + tol - devs[k].abs();
        }
        out
    }
}

/// `ln |W + s|` for `s = ±1`.
fn ln_abs_shift<T: Real>(w: HalfPlanePoint<T>, s: T) -> T {
    let (l, th, cos) = (w.log_rho(), w.theta(), w.cos_theta());
    if l > T::one() {
        let q = (-l).exp();
        l + T::half() * (T::two() * s * q * cos + q * q).ln_1p()
    } else {
        // re = ρ cos θ + s, written to avoid cancellation when W is near -s
        let re = if s > T::zero() {
            w.rho() * cos + T::one()
        } else {
            l.exp_m1() * cos - T::two() * (th * T::half()).sin().powi(2)
        };
        Complex::new(re, w.rho() * th.sin()).norm().ln()
    }
}

/// Surrogates for the frame point `w`, without the threshold flag.
pub fn surrogate_at<T: Real>(t: T, w: HalfPlanePoint<T>) -> SurrogateSample<T> {
    let lp = ln_abs_shift(w, T::one());
    let lm = ln_abs_shift(w, -T::one());
    let four = T::lit(4.0);
    // ln(|W+1| + |W-1|) = lp + ln(1 + e^{lm - lp})
    let ln_sum = lp + (lm - lp).exp().ln_1p();
    let s_orth = T::half() * (lp - T::LN_2());
    let s_total = T::half() * (lp + ln_sum - four.ln() - w.log_re());
    let s_tang = T::half() * (ln_sum - T::LN_2() - w.log_re());
    let sp = SpeedSample::from_frame(t, w);
    SurrogateSample {
        t,
        s_total,
        s_orth,
        s_tang,
        dev_total: sp.v - s_total,
        dev_orth: sp.v_o - s_orth,
        dev_tang: sp.v_t - s_tang,
        past_threshold: false,
    }
}

/// Surrogates along the grid. The threshold `t₀` is the first grid time from
/// which `Re η >= 0` (equivalently `|W| >= 1`) holds for the rest of the grid.
pub fn surrogate_speeds<T: Real, M: OrbitModel<T>>(
    model: &M,
    grid: &[T],
) -> Result<Vec<SurrogateSample<T>>> {
    check_grid(grid)?;
    let frames = grid
        .iter()
        .map(|&t| model.frame_point(t))
        .collect::<Result<Vec<_>>>()?;
    let first = frames
        .iter()
        .rposition(|w| w.log_rho() < T::zero())
        .map_or(0, |k| k + 1);
    Ok(grid
        .iter()
        .zip(&frames)
        .enumerate()
        .map(|(k, (&t, &w))| SurrogateSample {
            past_threshold: k >= first,
            ..surrogate_at(t, w)
        })
        .collect())
}
