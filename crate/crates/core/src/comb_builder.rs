//! Comb domains whose total speed beats a prescribed sublinear `g`
//! infinitely often.
//!
//! Teeth sit at `±a_j` with tips at height `b_j`. On `[x_j, b_{j+1}]` the
//! nearest boundary point to `ir` is on the `(j+1)`-th tooth at distance
//! `a_{j+1}`, so `¼∫ dr/δ` over that stretch is `(b_{j+1} - x_j)/(4a_{j+1})`.
//! Choosing `b_{j+1}` with `b_{j+1} - x_j >= j a_{j+1} g(b_{j+1})` makes the
//! lower bound at least `j g(b_{j+1}) / 4`.

use rayon::prelude::*;
use serde::Serialize;

use crate::domains::{quasihyp_lower, DomainSpec, Tooth};
use crate::error::{HypError, Result};
use crate::scalar::Real;

/// Lower end of the integral standing in for `0⁺`.
pub const INTEGRAL_START: f64 = 1e-6;
/// Each `b_{j+1}` satisfies the constraint with this factor instead of `1`.
pub const MARGIN: f64 = 0.999;
const BISECTION_STEPS: usize = 60;
const MAX_DOUBLINGS: usize = 2000;

/// The comparison function `g`.
#[derive(Debug, Clone, PartialEq)]
pub enum GSpec<T> {
    /// `log(1 + t)`.
    Log1p,
    Sqrt,
    /// `t^p`, `0 < p < 1`.
    Pow(T),
    /// Log-log interpolation through `(t, g)` pairs, extended by the power
    /// law through the last two (or first two) pairs.
    Table(Vec<(T, T)>),
}

impl<T: Real> GSpec<T> {
    pub fn eval(&self, t: T) -> T {
        match self {
            GSpec::Log1p => t.ln_1p(),
            GSpec::Sqrt => t.sqrt(),
            GSpec::Pow(p) => t.powf(*p),
            GSpec::Table(pts) => {
                let k = pts.partition_point(|p| p.0 < t).clamp(1, pts.len() - 1);
                let ((t0, g0), (t1, g1)) = (pts[k - 1], pts[k]);
                let s = (g1.ln() - g0.ln()) / (t1.ln() - t0.ln());
                (g0.ln() + s * (t.ln() - t0.ln())).exp()
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            GSpec::Log1p => "log1p".into(),
            GSpec::Sqrt => "sqrt".into(),
            GSpec::Pow(p) => format!("pow:{p}"),
            GSpec::Table(pts) => format!("table[{}]", pts.len()),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            GSpec::Pow(p) if !(*p > T::zero() && *p < T::one()) => {
                Err(HypError::spec(format!("pow exponent {p} must lie in (0, 1)")))
            }
            GSpec::Table(pts) => {
                if pts.len() < 2 {
                    return Err(HypError::spec("g table needs at least two points"));
                }
                if pts.iter().any(|p| !(p.0 > T::zero() && p.1 > T::zero())) {
                    return Err(HypError::spec("g table entries must be positive"));
                }
                if pts.windows(2).any(|w| !(w[1].0 > w[0].0)) {
                    return Err(HypError::spec("g table abscissae must increase"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// `g(T)/T < ½ g(T/10)/(T/10)` and `g(T) > g(T/10) > 0` on `T = 10^4..10^12`.
    pub fn check_sublinear(&self) -> Result<()> {
        self.validate()?;
        let ten = T::lit(10.0);
        for k in 4..=12 {
            let big = T::lit(10f64.powi(k));
            let small = big / ten;
            let (gb, gs) = (self.eval(big), self.eval(small));
            if !(gs > T::zero() && gb > gs) {
                return Err(HypError::spec(format!(
                    "g = {} does not increase to infinity on the probe grid",
                    self.name()
                )));
            }
            if !(gb / big < T::half() * gs / small) {
                return Err(HypError::spec(format!(
                    "g = {} is not sublinear on the probe grid (at t = {big})",
                    self.name()
                )));
            }
        }
        Ok(())
    }
}

/// How the tooth offsets `a_j` are chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum ASpec<T> {
    /// `a_j = j`.
    Linear,
    /// `a_j = ratio^{j-1}`.
    Geometric(T),
    Explicit(Vec<T>),
}

impl<T: Real> ASpec<T> {
    fn offsets(&self, n: usize) -> Result<Vec<T>> {
        let a: Vec<T> = match self {
            ASpec::Linear => (1..=n).map(|j| T::lit(j as f64)).collect(),
            ASpec::Geometric(r) => {
                if !(*r > T::one()) {
                    return Err(HypError::spec(format!("geometric ratio {r} must exceed 1")));
                }
                (0..n).map(|k| r.powi(k as i32)).collect()
            }
            ASpec::Explicit(v) => {
                if v.len() < n {
                    return Err(HypError::spec(format!(
                        "need {n} offsets a_j, got {}",
                        v.len()
                    )));
                }
                v[..n].to_vec()
            }
        };
        if a.iter().any(|x| !(*x > T::zero()) || !x.is_finite())
            || a.windows(2).any(|w| !(w[1] > w[0]))
        {
            return Err(HypError::spec("offsets a_j must be positive and strictly increasing"));
        }
        Ok(a)
    }
}

/// A built comb with its certificates.
#[derive(Debug, Clone)]
pub struct CombConstruction<T> {
    pub g: GSpec<T>,
    /// `a_1 .. a_{J+1}`.
    pub a: Vec<T>,
    /// `b_1 .. b_{J+1}`.
    pub b: Vec<T>,
    /// `x_1 .. x_J`, where `|ix_j - (a_j + ib_j)| = a_{j+1}`.
    pub x: Vec<T>,
    /// Largest height where the materialized teeth determine `δ`.
    pub extent: T,
    domain: DomainSpec<T>,
}

impl<T: Real> CombConstruction<T> {
    pub fn domain(&self) -> &DomainSpec<T> {
        &self.domain
    }

    /// Number of certified steps `J`.
    pub fn steps(&self) -> usize {
        self.x.len()
    }

    /// `(j a_{j+1} g(b_{j+1}) + x_j) / b_{j+1}` for `j = 1..J`.
    pub fn constraint(&self, j: usize) -> T {
        let (a, b, x) = (self.a[j], self.b[j], self.x[j - 1]);
        (T::lit(j as f64) * a * self.g.eval(b) + x) / b
    }

    pub fn to_json(&self) -> serde_json::Value {
        let f = |v: &[T]| v.iter().map(|x| x.to_f64_lossy()).collect::<Vec<_>>();
        serde_json::json!({
            "g": self.g.name(),
            "teeth": self.a.iter().zip(&self.b)
                .map(|(a, b)| [a.to_f64_lossy(), b.to_f64_lossy()])
                .collect::<Vec<_>>(),
            "x": f(&self.x),
            "extent": self.extent.to_f64_lossy(),
        })
    }
}

/// Build `J + 1` teeth certifying `J` steps of the construction.
pub fn build_comb<T: Real>(g: GSpec<T>, a_spec: &ASpec<T>, steps: usize) -> Result<CombConstruction<T>> {
    if steps < 1 {
        return Err(HypError::spec("comb construction needs J >= 1"));
    }
    g.check_sublinear()?;
    let a = a_spec.offsets(steps + 1)?;
    let margin = T::lit(MARGIN);
    let mut b = vec![T::one()];
    let mut x = Vec::with_capacity(steps);
    for j in 1..=steps {
        let (aj, an) = (a[j - 1], a[j]);
        let xj = b[j - 1] + (an * an - aj * aj).sqrt();
        let jf = T::lit(j as f64);
        let ok = |bb: T| (jf * an * g.eval(bb) + xj) / bb <= margin;
        let mut hi = xj * T::two();
        let mut lo = xj;
        let mut doublings = 0;
        while !ok(hi) {
            lo = hi;
            hi = hi * T::two();
            doublings += 1;
            if doublings > MAX_DOUBLINGS || !hi.is_finite() {
                return Err(HypError::spec(format!(
                    "no admissible b_{} found for g = {}",
                    j + 1,
                    g.name()
                )));
            }
        }
        for _ in 0..BISECTION_STEPS {
            let mid = (lo + hi) * T::half();
            if ok(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        x.push(xj);
        b.push(hi);
    }
    let teeth = a
        .iter()
        .zip(&b)
        .map(|(&a, &b)| Tooth { a, b })
        .collect();
    let domain = DomainSpec::comb(teeth)?;
    Ok(CombConstruction {
        g,
        extent: *b.last().expect("nonempty"),
        a,
        b,
        x,
        domain,
    })
}

/// One row of the verification table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CombRatio<T> {
    pub j: usize,
    /// `¼∫_{0⁺}^{b_{j+1}} dr/δ(ir) / g(b_{j+1})`.
    pub ratio: T,
    /// `¼∫_{x_j}^{b_{j+1}} dr/δ(ir) / g(b_{j+1})`.
    pub plateau_ratio: T,
    /// `j / 4`.
    pub bound: T,
}

impl<T: Real> CombRatio<T> {
    pub fn passes(&self) -> bool {
        self.ratio >= self.bound - T::lit(1e-9)
    }
}

/// Lower-bound ratios for every certified step (in parallel over `j`).
pub fn verify_comb<T: Real>(cc: &CombConstruction<T>) -> Result<Vec<CombRatio<T>>> {
    let start = T::lit(INTEGRAL_START);
    (1..=cc.steps())
        .into_par_iter()
        .map(|j| {
            let top = cc.b[j];
            let gv = cc.g.eval(top);
            let full = quasihyp_lower(cc.domain(), start, top)?;
            let plateau = quasihyp_lower(cc.domain(), cc.x[j - 1], top)?;
            Ok(CombRatio {
                j,
                ratio: full / gv,
                plateau_ratio: plateau / gv,
                bound: T::lit(j as f64) / T::lit(4.0),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::delta;
    use num_complex::Complex;

    #[test]
    fn first_crossing_point() {
        let cc = build_comb(GSpec::<f64>::Log1p, &ASpec::Linear, 3).unwrap();
        assert_eq!(cc.b[0], 1.0f64);
        assert!((cc.x[0] - 2.732_050_807_568_877_2).abs() < 1e-15);
    }

    #[test]
    fn constraints_hold_and_b_is_tight() {
        let cc = build_comb(GSpec::<f64>::Sqrt, &ASpec::Geometric(1.5), 6).unwrap();
        for j in 1..=6 {
            assert!(cc.constraint(j) < 1.0);
            assert!(cc.constraint(j) <= MARGIN);
            // slightly below b_{j+1} the constraint with margin fails
            let b = cc.b[j] * (1.0 - 1e-9);
            let c = (j as f64 * cc.a[j] * cc.g.eval(b) + cc.x[j - 1]) / b;
            assert!(c > MARGIN);
        }
    }

    #[test]
    fn rejects_linear_g() {
        assert!(build_comb(GSpec::Pow(1.0f64), &ASpec::Linear, 2).is_err());
        let lin = GSpec::Table(vec![(1.0f64, 1.0), (10.0, 10.0)]);
        assert!(build_comb(lin, &ASpec::Linear, 2).is_err());
        assert!(build_comb(GSpec::<f64>::Log1p, &ASpec::Linear, 0).is_err());
    }

    #[test]
    fn plateau_distance_is_next_offset() {
        let cc = build_comb(GSpec::<f64>::Log1p, &ASpec::Linear, 4).unwrap();
        for j in 1..=4 {
            for s in [0.0, 0.3, 0.7, 1.0] {
                let r = cc.x[j - 1] + s * (cc.b[j] - cc.x[j - 1]);
                let d = delta(cc.domain(), Complex::new(0.0, r)).unwrap();
                assert!((d - cc.a[j]).abs() < 1e-9 * cc.a[j], "{j} {s} {d}");
            }
        }
    }

    #[test]
    fn single_step_passes() {
        let cc = build_comb(GSpec::<f64>::Log1p, &ASpec::Linear, 1).unwrap();
        let rows = verify_comb(&cc).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].passes() && rows[0].ratio >= 0.25);
        assert!(rows[0].plateau_ratio >= 0.25 - 1e-9);
    }

    #[test]
    fn table_interpolates_in_log_log() {
        let g = GSpec::Table(vec![(1.0f64, 1.0), (100.0, 10.0)]);
        assert!((g.eval(10.0) - 10f64.sqrt()).abs() < 1e-12);
        assert!((g.eval(1e4) - 100.0).abs() < 1e-9);
        assert!(g.check_sublinear().is_ok());
    }
}
