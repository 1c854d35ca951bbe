//! Suites fitting asymptotic constants, and the comb construction.

use std::f64::consts::PI;

use num_complex::Complex;
use rand::Rng;

use super::{model_semigroups, Ctx, Metrics, Tally};
use crate::comb_builder::{build_comb, verify_comb, ASpec, GSpec};
use crate::domains::{delta, DomainKind, DomainSpec};
use crate::error::Result;
use crate::semigroups::KoenigsSemigroup;
use crate::speeds::{
    fit_asymptotic, geometric_grid, nontangential_ratio, nontangential_report, sample_speeds,
    Basis, SpeedColumn, SpeedSample, Verdict,
};

/// Fit window for the asymptotic constants.
pub const FIT_WINDOW: (f64, f64) = (1e6, 1e8);
/// Random sectors whose constants are fitted besides the models.
const RANDOM_SECTORS: usize = 6;
/// Bound used for "vᵀ stays bounded" on the fitted examples.
const VT_SUP: f64 = 3.0;

/// One fitted quantity and its predicted value.
struct Target {
    column: SpeedColumn,
    basis: Basis,
    expected: f64,
    tol: f64,
}

fn log_target(column: SpeedColumn, expected: f64, tol: f64) -> Target {
    Target {
        column,
        basis: Basis::LogT,
        expected,
        tol,
    }
}

fn column_name(c: SpeedColumn) -> &'static str {
    match c {
        SpeedColumn::V => "v",
        SpeedColumn::VO => "v_o",
        SpeedColumn::VT => "v_t",
    }
}

/// Predicted log-coefficients for a semigroup with image `p + iV(α, β)`.
fn sector_targets(alpha: f64, beta: f64, tol: f64) -> Vec<Target> {
    let s = alpha + beta;
    if alpha > 0.0 && beta > 0.0 {
        vec![
            log_target(SpeedColumn::V, PI / (2.0 * s), tol),
            log_target(SpeedColumn::VO, PI / (2.0 * s), tol),
        ]
    } else {
        vec![
            log_target(SpeedColumn::V, (PI + s) / (2.0 * s), tol),
            log_target(SpeedColumn::VO, PI / (2.0 * s), tol),
            log_target(SpeedColumn::VT, 0.5, tol),
        ]
    }
}

struct Case {
    name: String,
    sg: KoenigsSemigroup<f64>,
    targets: Vec<Target>,
    /// Require `sup vᵀ < VT_SUP` over the grid.
    bounded_tangential: bool,
    /// Require `sup |v - log t| < 2` over the window.
    log_tracking: bool,
}

fn cases(ctx: &Ctx) -> Result<Vec<Case>> {
    let mut out = Vec::new();
    for (name, sg) in model_semigroups()? {
        let (targets, bounded, tracking) = match *sg.domain().kind() {
            DomainKind::Strip { .. } => (
                vec![Target {
                    column: SpeedColumn::V,
                    basis: Basis::T,
                    expected: 1.0,
                    tol: 0.01,
                }],
                false,
                false,
            ),
            DomainKind::HalfPlaneRight { .. } => (vec![], false, true),
            DomainKind::Koebe { .. } => (vec![log_target(SpeedColumn::V, 0.25, 0.02)], true, false),
            DomainKind::Sector { alpha, beta, .. } if alpha > 0.0 && beta > 0.0 => {
                (sector_targets(alpha, beta, 0.02), true, false)
            }
            DomainKind::Sector { alpha, beta, .. } => (sector_targets(alpha, beta, 0.03), false, false),
            DomainKind::Comb { .. } => unreachable!("models have closed-form maps"),
        };
        out.push(Case {
            name,
            sg,
            targets,
            bounded_tangential: bounded,
            log_tracking: tracking,
        });
    }
    let mut rng = ctx.rng();
    for _ in 0..RANDOM_SECTORS {
        let p = Complex::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let a = rng.gen_range(0.5..PI);
        let b = if rng.gen_bool(0.3) { 0.0 } else { rng.gen_range(0.5..PI) };
        let (alpha, beta) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
        let dom = DomainSpec::sector(p, alpha, beta)?;
        let tol = if alpha > 0.0 && beta > 0.0 { 0.02 } else { 0.03 };
        out.push(Case {
            name: dom.to_params().to_json(),
            sg: KoenigsSemigroup::new(dom)?,
            targets: sector_targets(alpha, beta, tol),
            bounded_tangential: false,
            log_tracking: false,
        });
    }
    Ok(out)
}

pub(super) fn sector_asymptotics(ctx: &Ctx) -> Result<(Tally, Metrics)> {
    let cases = cases(ctx)?;
    let grid = geometric_grid(1.0, FIT_WINDOW.1, ctx.n.max(512))?;
    let (tally, found) = ctx.run_par(&cases, |case, t| {
        let rows: Vec<SpeedSample<f64>> = sample_speeds(&case.sg, &grid)?;
        let ts: Vec<f64> = rows.iter().map(|s| s.t).collect();
        let mut found = Vec::new();
        for target in &case.targets {
            let ys: Vec<f64> = rows.iter().map(|s| target.column.get(s)).collect();
            let fit = fit_asymptotic(&ts, &ys, target.basis, FIT_WINDOW)?;
            t.check(target.tol - (fit.coefficient - target.expected).abs());
            let basis = match target.basis {
                Basis::LogT => "log_t",
                Basis::T => "t",
            };
            found.push((format!("{}_{basis}[{}]", column_name(target.column), case.name), fit.coefficient));
        }
        if case.bounded_tangential {
            let sup = rows.iter().map(|s| s.v_t).fold(0.0, f64::max);
            t.check(VT_SUP - sup);
            found.push((format!("v_t_sup[{}]", case.name), sup));
        }
        if case.log_tracking {
            let sup = rows
                .iter()
                .filter(|s| s.t >= FIT_WINDOW.0)
                .map(|s| (s.v - s.t.ln()).abs())
                .fold(0.0, f64::max);
            t.check(2.0 - sup);
            found.push((format!("v_minus_log_t_sup[{}]", case.name), sup));
        }
        Ok(found)
    })?;
    Ok((tally, found.into_iter().flatten().collect()))
}

pub(super) fn nontangential(ctx: &Ctx) -> Result<(Tally, Metrics)> {
    let grid = geometric_grid(1.0, 1e8, ctx.n.clamp(16, 512))?;
    let models: Vec<_> = model_semigroups()?
        .into_iter()
        .filter(|(_, sg)| !matches!(sg.domain().kind(), DomainKind::Strip { .. }))
        .collect();
    let (mut tally, found) = ctx.run_par(&models, |(name, sg), t| {
        let r = nontangential_report(sg, &grid)?;
        t.check(if r.agree() { 0.0 } else { -1.0 });
        // non-tangential exactly for the sectors with both angles positive
        // and the Koebe domain
        let expect = match *sg.domain().kind() {
            DomainKind::Sector { alpha, beta, .. } if alpha > 0.0 && beta > 0.0 => Verdict::Bounded,
            DomainKind::Koebe { .. } => Verdict::Bounded,
            _ => Verdict::Unbounded,
        };
        t.check(if r.ratio_verdict == expect { 0.0 } else { -1.0 });
        Ok(vec![
            (format!("ratio_sup[{name}]"), r.ratio_sup),
            (format!("ratio_end[{name}]"), r.ratio_end),
            (format!("v_t_end[{name}]"), r.v_t_end),
        ])
    })?;
    // mirror symmetry: symmetric sectors and the Koebe domain have ratio 1 on the axis
    let mut rng = ctx.rng();
    for _ in 0..ctx.n.min(256) {
        let p = Complex::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let a = rng.gen_range(0.3..PI);
        let t = 10f64.powf(rng.gen_range(-2.0..8.0));
        for dom in [DomainSpec::sector(p, a, a)?, DomainSpec::koebe(p)] {
            let sg = KoenigsSemigroup::new(dom)?;
            let r = nontangential_ratio(&sg, sg.base_model_point(), t)?;
            tally.check(1e-12 - (r - 1.0).abs());
        }
    }
    Ok((tally, found.into_iter().flatten().collect()))
}

/// Steps certified by the comb suite.
pub const COMB_STEPS: usize = 10;

/// Distance from `q` to the vertical teeth, by a fine discretization of each.
fn brute_delta(teeth: &[(f64, f64)], q: Complex<f64>) -> (f64, f64) {
    let mut best = f64::INFINITY;
    let mut resolution: f64 = 0.0;
    let m = 4000;
    for &(a, b) in teeth {
        let bottom = (q.im - 1.0).min(b);
        let h = (b - bottom) / m as f64;
        resolution = resolution.max(h);
        for x in [-a, a] {
            for i in 0..=m {
                let p = Complex::new(x, b - h * i as f64);
                best = best.min((p - q).norm());
            }
        }
    }
    (best, resolution)
}

pub(super) fn comb(ctx: &Ctx) -> Result<(Tally, Metrics)> {
    let steps = ctx.n.clamp(1, COMB_STEPS);
    let cc = build_comb(GSpec::Log1p, &ASpec::Linear, steps)?;
    let rows = verify_comb(&cc)?;
    let mut tally = ctx.tally();
    let mut metrics = Metrics::new();
    for r in &rows {
        let c = cc.constraint(r.j);
        tally.check(if c < 1.0 { 1.0 - c } else { -1.0 });
        tally.check(r.ratio - r.bound);
        tally.check(r.plateau_ratio - r.bound);
        metrics.insert(format!("ratio_j{:02}", r.j), r.ratio);
        metrics.insert(format!("plateau_ratio_j{:02}", r.j), r.plateau_ratio);
    }
    if steps >= COMB_STEPS {
        let growth = rows[steps - 1].ratio / rows[0].ratio;
        tally.check(growth - 5.0);
        metrics.insert("ratio_last_over_first".into(), growth);
    }
    // on [x_j, b_{j+1}] the nearest boundary point is the tip of tooth j+1
    let teeth: Vec<(f64, f64)> = cc.a.iter().copied().zip(cc.b.iter().copied()).collect();
    let mut rng = ctx.rng();
    for j in 1..=steps {
        for _ in 0..4 {
            let r = rng.gen_range(cc.x[j - 1]..cc.b[j]);
            let q = Complex::new(0.0, r);
            let d = delta(cc.domain(), q)?;
            tally.check(1e-12 * cc.a[j] - (d - cc.a[j]).abs());
            let (brute, h) = brute_delta(&teeth, q);
            tally.check(h - (d - brute).abs());
        }
    }
    Ok((tally, metrics))
}
