//! Comparison of the boundary distances of `Ω⁻` and `Ω⁺` along the orbit
//! axis; bounded ratio should coincide with bounded tangential speed.

use num_complex::Complex;
use serde::Serialize;

use super::{check_grid, sample_speeds};
use crate::domains::{delta_pm, OmegaSign};
use crate::error::{HypError, Result};
use crate::hyp_core::ComplexPoint;
use crate::scalar::Real;
use crate::semigroups::KoenigsSemigroup;

/// Ratio considered bounded when `sup max(r, 1/r)` stays below this.
pub const RATIO_BOUNDED: f64 = 10.0;
/// Ratio considered unbounded when its value at the last grid time exceeds this.
pub const RATIO_UNBOUNDED: f64 = 1e6;
/// `vᵀ` considered bounded when its supremum stays below this.
pub const VT_BOUNDED: f64 = 3.0;
/// `vᵀ` considered unbounded when its final value exceeds this.
pub const VT_UNBOUNDED: f64 = 5.0;

/// `min{t, δ_{Ω⁻}(p+it)} / min{t, δ_{Ω⁺}(p+it)}` with `Ω = h(𝔻)`.
pub fn nontangential_ratio<T: Real>(sg: &KoenigsSemigroup<T>, p: ComplexPoint<T>, t: T) -> Result<T> {
    let dom = sg.domain();
    if !dom.contains(p) {
        return Err(HypError::domain(format!("{p} is not in h(D)")));
    }
    if !(t > T::zero()) || !t.is_finite() {
        return Err(HypError::domain(format!("ratio needs finite t > 0, got {t}")));
    }
    let q = p + Complex::new(T::zero(), t);
    let minus = delta_pm(dom, OmegaSign::minus(p), q)?;
    let plus = delta_pm(dom, OmegaSign::plus(p), q)?;
    Ok(t.min(minus) / t.min(plus))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Bounded,
    Unbounded,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NontangentialReport<T> {
    /// `sup max(r, 1/r)` over the grid.
    pub ratio_sup: T,
    pub ratio_end: T,
    pub v_t_sup: T,
    pub v_t_end: T,
    pub ratio_verdict: Verdict,
    pub v_t_verdict: Verdict,
}

impl<T> NontangentialReport<T> {
    /// Both sides reached the same definite verdict.
    pub fn agree(&self) -> bool {
        self.ratio_verdict == self.v_t_verdict && self.ratio_verdict != Verdict::Inconclusive
    }
}

/// Ratio and tangential speed along the orbit of `0`, i.e. with `p = h(0)`.
pub fn nontangential_report<T: Real>(
    sg: &KoenigsSemigroup<T>,
    grid: &[T],
) -> Result<NontangentialReport<T>> {
    check_grid(grid)?;
    let times: Vec<T> = grid.iter().copied().filter(|t| *t > T::zero()).collect();
    if times.is_empty() {
        return Err(HypError::domain("grid needs a positive time"));
    }
    let p = sg.base_model_point();
    let ratios = times
        .iter()
        .map(|&t| nontangential_ratio(sg, p, t))
        .collect::<Result<Vec<_>>>()?;
    let speeds = sample_speeds(sg, &times)?;
    let ratio_sup = ratios
        .iter()
        .map(|&r| r.max(T::one() / r))
        .fold(T::zero(), T::max);
    let ratio_end = *ratios.last().expect("nonempty");
    let v_t_sup = speeds.iter().map(|s| s.v_t).fold(T::zero(), T::max);
    let v_t_end = speeds.last().expect("nonempty").v_t;
    let ratio_verdict = if ratio_sup <= T::lit(RATIO_BOUNDED) {
        Verdict::Bounded
    } else if ratio_end.max(T::one() / ratio_end) > T::lit(RATIO_UNBOUNDED) {
        Verdict::Unbounded
    } else {
        Verdict::Inconclusive
    };
    let v_t_verdict = if v_t_sup < T::lit(VT_BOUNDED) {
        Verdict::Bounded
    } else if v_t_end > T::lit(VT_UNBOUNDED) {
        Verdict::Unbounded
    } else {
        Verdict::Inconclusive
    };
    Ok(NontangentialReport {
        ratio_sup,
        ratio_end,
        v_t_sup,
        v_t_end,
        ratio_verdict,
        v_t_verdict,
    })
}
