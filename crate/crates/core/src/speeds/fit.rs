use serde::Serialize;

use super::SpeedSample;
use crate::error::{HypError, Result};
use crate::scalar::Real;

/// Fewest points a fit window may contain.
pub const MIN_FIT_POINTS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    LogT,
    T,
}

impl Basis {
    pub fn eval<T: Real>(self, t: T) -> T {
        match self {
            Basis::LogT => t.ln(),
            Basis::T => t,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpeedColumn {
    V,
    VO,
    VT,
}

impl SpeedColumn {
    pub fn get<T: Real>(self, s: &SpeedSample<T>) -> T {
        match self {
            SpeedColumn::V => s.v,
            SpeedColumn::VO => s.v_o,
            SpeedColumn::VT => s.v_t,
        }
    }
}

/// Least-squares fit `y ≈ coefficient · basis(t) + intercept` over a window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticFit<T> {
    pub basis: Basis,
    pub coefficient: T,
    pub intercept: T,
    /// `max |y - coefficient · basis(t) - intercept|` over the window.
    pub sup_residual: T,
    pub window: (T, T),
    pub points: usize,
}

/// Fit the series `(ts, ys)` against `basis` on `window = [lo, hi]`.
pub fn fit_asymptotic<T: Real>(
    ts: &[T],
    ys: &[T],
    basis: Basis,
    window: (T, T),
) -> Result<AsymptoticFit<T>> {
    if ts.len() != ys.len() {
        return Err(HypError::spec("time and value series differ in length"));
    }
    let (lo, hi) = window;
    let pts: Vec<(T, T)> = ts
        .iter()
        .zip(ys)
        .filter(|(t, _)| **t >= lo && **t <= hi)
        .map(|(&t, &y)| (basis.eval(t), y))
        .collect();
    if pts.len() < MIN_FIT_POINTS {
        return Err(HypError::EmptyWindow(format!(
            "window [{lo}, {hi}] holds {} samples, need at least {MIN_FIT_POINTS}",
            pts.len()
        )));
    }
    let n = T::lit(pts.len() as f64);
    let mx = pts.iter().fold(T::zero(), |a, p| a + p.0) / n;
    let my = pts.iter().fold(T::zero(), |a, p| a + p.1) / n;
    let (sxy, sxx) = pts.iter().fold((T::zero(), T::zero()), |(sxy, sxx), &(x, y)| {
        let dx = x - mx;
        (sxy + dx * (y - my), sxx + dx * dx)
    });
    if !(sxx > T::zero()) {
        return Err(HypError::EmptyWindow("basis is constant on the window".into()));
    }
    let coefficient = sxy / sxx;
    let intercept = my - coefficient * mx;
    let sup_residual = pts
        .iter()
        .map(|&(x, y)| (y - coefficient * x - intercept).abs())
        .fold(T::zero(), T::max);
    Ok(AsymptoticFit {
        basis,
        coefficient,
        intercept,
        sup_residual,
        window,
        points: pts.len(),
    })
}

/// Fit one speed column of `samples`.
pub fn fit_speeds<T: Real>(
    samples: &[SpeedSample<T>],
    column: SpeedColumn,
    basis: Basis,
    window: (T, T),
) -> Result<AsymptoticFit<T>> {
    let ts: Vec<T> = samples.iter().map(|s| s.t).collect();
    let ys: Vec<T> = samples.iter().map(|s| column.get(s)).collect();
    fit_asymptotic(&ts, &ys, basis, window)
}
