//! Seeded property suites re-deriving the inequalities of the theory from
//! the public operations of the crate.
//!
//! Samples are drawn sequentially from a ChaCha stream and evaluated in
//! parallel; partial tallies merge associatively, so a report depends only
//! on `(suite, n, seed, tol)`.

mod asymptotic;
mod geometry;
mod speed_bounds;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::domains::DomainSpec;
use crate::error::{HypError, Result};
use crate::hyp_core::DiscPoint;
use crate::semigroups::KoenigsSemigroup;

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    /// Number of individual checks performed.
    pub samples: usize,
    /// Checks whose slack fell below `-tol`.
    pub violations: usize,
    /// Smallest signed slack seen (negative means the inequality failed).
    pub worst_margin: f64,
    pub seed: u64,
    pub tol: f64,
    /// Suite-specific diagnostics such as fitted constants.
    pub metrics: BTreeMap<String, f64>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// A suite and the public operations it exercises.
pub struct SuiteInfo {
    pub name: &'static str,
    pub ops: &'static [&'static str],
    pub about: &'static str,
}

pub const SUITES: &[SuiteInfo] = &[
    SuiteInfo {
        name: "lemma_halfplane",
        ops: &["k_half", "path_length"],
        about: "distance estimates between rays of the right half-plane",
    },
    SuiteInfo {
        name: "pythagoras",
        ops: &["omega", "project_to_radius", "dist_to_radius"],
        about: "sandwich of omega(x0, z) by projection and distance to a diameter",
    },
    SuiteInfo {
        name: "contraction",
        ops: &["omega", "project_to_radius"],
        about: "projection onto a diameter does not increase distance",
    },
    SuiteInfo {
        name: "projection",
        ops: &["project_to_radius", "omega", "k_half"],
        about: "closed-form projection against a golden-section argmin",
    },
    SuiteInfo {
        name: "isometries",
        ops: &["cayley", "cayley_inv", "omega", "k_half", "kappa", "path_length"],
        about: "Cayley map and disc automorphisms preserve distances",
    },
    SuiteInfo {
        name: "domains",
        ops: &["build_domain", "to_halfplane", "delta", "delta_pm", "k_domain", "quasihyp_lower"],
        about: "map chains, boundary distances and the quasi-hyperbolic bound",
    },
    SuiteInfo {
        name: "semigroup",
        ops: &["classify", "orbit", "denjoy_wolff", "k_half"],
        about: "semigroup law, Koenigs equation and Schwarz-Pick",
    },
    SuiteInfo {
        name: "split",
        ops: &["sample_speeds"],
        about: "v° + vᵀ - ½ log 2 <= v <= v° + vᵀ",
    },
    SuiteInfo {
        name: "julia_tangent",
        ops: &["sample_speeds"],
        about: "vᵀ <= v° + 4 log 2",
    },
    SuiteInfo {
        name: "surrogates",
        ops: &["surrogate_speeds"],
        about: "Euclidean surrogates stay within fixed distance of the speeds",
    },
    SuiteInfo {
        name: "lower_bounds",
        ops: &["classify", "sample_speeds"],
        about: "class-dependent lower bounds for the total speed",
    },
    SuiteInfo {
        name: "betsakos",
        ops: &["classify", "sample_speeds"],
        about: "lower bounds for the orthogonal speed",
    },
    SuiteInfo {
        name: "sector_bound",
        ops: &["sample_speeds"],
        about: "logarithmic lower bound for semigroups with image in a sector",
    },
    SuiteInfo {
        name: "sector_asymptotics",
        ops: &["sample_speeds", "fit_asymptotic"],
        about: "fitted asymptotic constants of the model examples",
    },
    SuiteInfo {
        name: "basepoint",
        ops: &["sample_speeds", "omega"],
        about: "speeds from two starting points differ by at most their distance",
    },
    SuiteInfo {
        name: "conjugation",
        ops: &["sample_speeds", "omega"],
        about: "speeds of conjugated semigroups stay close",
    },
    SuiteInfo {
        name: "nontangential",
        ops: &["nontangential_ratio", "sample_speeds"],
        about: "boundary-distance ratio and tangential speed agree on non-tangentiality",
    },
    SuiteInfo {
        name: "comb",
        ops: &["build_comb", "verify_comb", "delta", "quasihyp_lower"],
        about: "comb construction constraints and ratio table",
    },
];

/// Every public operation the suites are required to touch.
pub const PUBLIC_OPS: &[&str] = &[
    "omega",
    "k_half",
    "kappa",
    "cayley",
    "cayley_inv",
    "project_to_radius",
    "dist_to_radius",
    "path_length",
    "build_domain",
    "to_halfplane",
    "delta",
    "delta_pm",
    "k_domain",
    "quasihyp_lower",
    "classify",
    "orbit",
    "denjoy_wolff",
    "sample_speeds",
    "surrogate_speeds",
    "fit_asymptotic",
    "nontangential_ratio",
    "build_comb",
    "verify_comb",
];

/// Public operations not exercised by any suite.
pub fn uncovered_ops() -> Vec<&'static str> {
    PUBLIC_OPS
        .iter()
        .copied()
        .filter(|op| !SUITES.iter().any(|s| s.ops.contains(op)))
        .collect()
}

/// Run the named suite with `n` samples.
pub fn run_suite(name: &str, n: usize, seed: u64, tol: f64) -> Result<SuiteReport> {
    if n == 0 {
        return Err(HypError::spec("a suite needs at least one sample"));
    }
    if !(tol >= 0.0) {
        return Err(HypError::spec(format!("tolerance must be nonnegative, got {tol}")));
    }
    let ctx = Ctx { n, seed, tol };
    let (tally, metrics) = match name {
        "lemma_halfplane" => geometry::lemma_halfplane(&ctx)?,
        "pythagoras" => geometry::pythagoras(&ctx)?,
        "contraction" => geometry::contraction(&ctx)?,
        "projection" => geometry::projection(&ctx)?,
        "isometries" => geometry::isometries(&ctx)?,
        "domains" => geometry::domains(&ctx)?,
        "semigroup" => speed_bounds::semigroup(&ctx)?,
        "split" => speed_bounds::split(&ctx)?,
        "julia_tangent" => speed_bounds::julia_tangent(&ctx)?,
        "surrogates" => speed_bounds::surrogates(&ctx)?,
        "lower_bounds" => speed_bounds::lower_bounds(&ctx)?,
        "betsakos" => speed_bounds::betsakos(&ctx)?,
        "sector_bound" => speed_bounds::sector_bound(&ctx)?,
        "basepoint" => speed_bounds::basepoint(&ctx)?,
        "conjugation" => speed_bounds::conjugation(&ctx)?,
        "sector_asymptotics" => asymptotic::sector_asymptotics(&ctx)?,
        "nontangential" => asymptotic::nontangential(&ctx)?,
        "comb" => asymptotic::comb(&ctx)?,
        other => return Err(HypError::UnknownSuite(other.to_string())),
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        samples: tally.samples,
        violations: tally.violations,
        worst_margin: tally.worst,
        seed,
        tol,
        metrics,
    })
}

pub(crate) struct Ctx {
    pub n: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Ctx {
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    pub fn tally(&self) -> Tally {
        Tally::new(self.tol)
    }

    /// Evaluate `check` on every sample in parallel. Tallies are merged and
    /// the per-sample outputs returned in sample order.
    pub fn run_par<S: Sync, A: Send, F>(&self, samples: &[S], check: F) -> Result<(Tally, Vec<A>)>
    where
        F: Fn(&S, &mut Tally) -> Result<A> + Sync,
    {
        let parts = samples
            .par_iter()
            .map(|s| {
                let mut t = self.tally();
                let a = check(s, &mut t)?;
                Ok((t, a))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut tally = self.tally();
        let mut out = Vec::with_capacity(parts.len());
        for (t, a) in parts {
            tally = tally.merge(t);
            out.push(a);
        }
        Ok((tally, out))
    }
}

pub(crate) type Metrics = BTreeMap<String, f64>;

/// Running count of checks and the worst slack.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Tally {
    pub samples: usize,
    pub violations: usize,
    pub worst: f64,
    tol: f64,
}

impl Tally {
    pub fn new(tol: f64) -> Self {
        Self {
            samples: 0,
            violations: 0,
            worst: f64::INFINITY,
            tol,
        }
    }

    /// Record a check with signed slack `margin`; NaN counts as a violation.
    pub fn check(&mut self, margin: f64) {
        self.samples += 1;
        if !(margin >= -self.tol) {
            self.violations += 1;
        }
        if margin.is_nan() {
            self.worst = f64::NEG_INFINITY;
        } else {
            self.worst = self.worst.min(margin);
        }
    }

    /// `lhs <= rhs`.
    pub fn le(&mut self, lhs: f64, rhs: f64) {
        self.check(rhs - lhs);
    }

    /// `|a - b| <= rel · max(1, |a|)`, independent of the suite tolerance.
    pub fn close(&mut self, a: f64, b: f64, rel: f64) {
        let scale = a.abs().max(1.0);
        self.check(rel - (a - b).abs() / scale);
    }

    pub fn merge(self, other: Self) -> Self {
        Self {
            samples: self.samples + other.samples,
            violations: self.violations + other.violations,
            worst: self.worst.min(other.worst),
            tol: self.tol,
        }
    }
}

/// Disc point at hyperbolic distance uniform in `[0, dmax]` from the origin.
pub(crate) fn disc_point(rng: &mut ChaCha8Rng, dmax: f64) -> DiscPoint<f64> {
    let d = rng.gen_range(0.0..=dmax);
    let a = rng.gen_range(-PI..PI);
    DiscPoint::from_hyperbolic_polar(d, a)
}

/// Angle in `(-π/2, π/2)`, half the time pushed towards the edges.
pub(crate) fn half_plane_angle(rng: &mut ChaCha8Rng) -> f64 {
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    if rng.gen_bool(0.5) {
        sign * rng.gen_range(0.0..PI / 2.0)
    } else {
        let u: f64 = rng.gen_range(0.0..8.0);
        sign * PI / 2.0 * (1.0 - 10f64.powf(-u))
    }
}

/// The five worked examples.
pub fn model_examples() -> Vec<(String, DomainSpec<f64>)> {
    let o = Complex::new(0.0, 0.0);
    vec![
        ("strip(pi/2)".into(), DomainSpec::strip(PI / 2.0).expect("valid")),
        ("halfplane(0)".into(), DomainSpec::halfplane(o)),
        ("sector(0,pi/4,pi/4)".into(), DomainSpec::sector(o, PI / 4.0, PI / 4.0).expect("valid")),
        ("sector(0,pi,0)".into(), DomainSpec::sector(o, PI, 0.0).expect("valid")),
        ("koebe(0)".into(), DomainSpec::koebe(o)),
    ]
}

pub(crate) fn model_semigroups() -> Result<Vec<(String, KoenigsSemigroup<f64>)>> {
    model_examples()
        .into_iter()
        .map(|(n, d)| Ok((n, KoenigsSemigroup::new(d)?)))
        .collect()
}

/// A random non-comb domain with a closed-form map.
pub(crate) fn random_domain(rng: &mut ChaCha8Rng) -> DomainSpec<f64> {
    let p = Complex::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    match rng.gen_range(0..4) {
        0 => DomainSpec::strip(rng.gen_range(0.5..4.0)).expect("positive width"),
        1 => DomainSpec::halfplane(p),
        2 => {
            let a = rng.gen_range(0.5..PI);
            let b = if rng.gen_bool(0.3) { 0.0 } else { rng.gen_range(0.5..PI) };
            if rng.gen_bool(0.5) {
                DomainSpec::sector(p, a, b).expect("valid angles")
            } else {
                DomainSpec::sector(p, b, a).expect("valid angles")
            }
        }
        _ => DomainSpec::koebe(p),
    }
}

/// Model examples followed by `extra` random domains.
pub(crate) fn semigroup_catalog(
    rng: &mut ChaCha8Rng,
    extra: usize,
) -> Result<Vec<(String, KoenigsSemigroup<f64>)>> {
    let mut out = model_semigroups()?;
    for k in 0..extra {
        let d = random_domain(rng);
        out.push((format!("random{k}:{}", d.to_params().to_json()), KoenigsSemigroup::new(d)?));
    }
    Ok(out)
}
