//! Suites on semigroup orbits and the inequalities satisfied by their speeds.

use std::f64::consts::{LN_2, PI};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{disc_point, model_semigroups, semigroup_catalog, Ctx, Metrics, Tally};
use crate::domains::DomainKind;
use crate::error::Result;
use crate::hyp_core::{k_half, omega, DiscAutomorphism, DiscPoint};
use crate::semigroups::{classify, denjoy_wolff, orbit, Classification, KoenigsSemigroup};
use crate::speeds::{
    geometric_grid, sample_speeds, surrogate_speeds, Conjugated, OrbitFrom, SpeedSample,
};

/// Random domains added to the model examples in the grid suites.
const EXTRA_DOMAINS: usize = 8;
/// Random conjugations of the model examples in the grid suites.
const CONJUGATIONS: usize = 4;
const GRID_RANGE: (f64, f64) = (1e-3, 1e8);

fn grid(n: usize) -> Result<Vec<f64>> {
    geometric_grid(GRID_RANGE.0, GRID_RANGE.1, n.max(2))
}

fn random_automorphism(rng: &mut ChaCha8Rng, dmax: f64) -> DiscAutomorphism<f64> {
    DiscAutomorphism::new(disc_point(rng, dmax), rng.gen_range(-PI..PI))
}

/// Orbits whose speeds feed the universal inequalities: the model examples,
/// random domains, and random conjugates of the model examples.
struct Family {
    plain: Vec<(String, KoenigsSemigroup<f64>)>,
    conjugates: Vec<(usize, DiscAutomorphism<f64>)>,
}

impl Family {
    fn new(ctx: &Ctx) -> Result<Self> {
        let mut rng = ctx.rng();
        let plain = semigroup_catalog(&mut rng, EXTRA_DOMAINS)?;
        let conjugates = (0..CONJUGATIONS)
            .map(|_| (rng.gen_range(0..5), random_automorphism(&mut rng, 3.0)))
            .collect();
        Ok(Self { plain, conjugates })
    }

    fn len(&self) -> usize {
        self.plain.len() + self.conjugates.len()
    }

    fn speeds(&self, k: usize, grid: &[f64]) -> Result<Vec<SpeedSample<f64>>> {
        if k < self.plain.len() {
            sample_speeds(&self.plain[k].1, grid)
        } else {
            let (i, m) = self.conjugates[k - self.plain.len()];
            sample_speeds(&Conjugated::new(&self.plain[i].1, m), grid)
        }
    }
}

fn for_each_orbit(
    ctx: &Ctx,
    check: impl Fn(&SpeedSample<f64>, &mut Tally) + Sync,
) -> Result<Tally> {
    let fam = Family::new(ctx)?;
    let grid = grid(ctx.n)?;
    let idx: Vec<usize> = (0..fam.len()).collect();
    let (tally, _) = ctx.run_par(&idx, |&k, t| {
        for s in fam.speeds(k, &grid)? {
            check(&s, t);
        }
        Ok(())
    })?;
    Ok(tally)
}

pub(super) fn split(ctx: &Ctx) -> Result<(Tally, Metrics)> {
    let tally = for_each_orbit(ctx, |s, t| {
        t.le(s.v_o + s.v_t - 0.5 * LN_2, s.v);
        t.le(s.v, s.v_o + s.v_t);
    })?;
    Ok((tally, Metrics::new()))
}

pub(super) fn julia_tangent(ctx: &Ctx) -> Result<(Tally, Metrics)> {
    let tally = for_each_orbit(ctx, |s, t| t.le(s.v_t, s.v_o + 4.0 * LN_2))?;
    Ok((tally, Metrics::new()))
}

pub(super) fn surrogates(ctx: &Ctx) -> Result<(Tally, Metrics)> {
    let fam = Family::new(ctx)?;
    let grid = grid(ctx.n)?;
    let idx: Vec<usize> = (0..fam.len()).collect();
    let (tally, skipped) = ctx.run_par(&idx, |&k, t| {
        let rows = if k < fam.plain.len() {
            surrogate_speeds(&fam.plain[k].1, &grid)?
        } else {
            let (i, m) = fam.conjugates[k - fam.plain.len()];
            surrogate_speeds(&Conjugated::new(&fam.plain[i].1, m), &grid)?
        };
        let mut before = 0usize;
        for r in rows {
            if r.past_threshold {
                // speeds and surrogates are each accurate to a few ulps of
                // their size, which for hyperbolic orbits is about t
                let floor = 16.0 * f64::EPSILON * r.s_total.abs().max(1.0);
                for m in r.margins(0.0) {
                    t.check(m + floor);
                }
            } else {
                before += 1;
            }
        }
        Ok(before)
    })?;
    let mut metrics = Metrics::new();
    metrics.insert(
        "grid_points_before_threshold".into(),
        skipped.iter().sum::<usize>() as f64,
    );
    Ok((tally, metrics))
}

/// Floor for the lower-bound expressions on the model examples.
const LOWER_FLOOR: f64 = -10.0;

fn min_over(rows: &[SpeedSample<f64>], f: impl Fn(&SpeedSample<f64>) -> f64) -> f64 {
    rows.iter().filter(|s| s.t >= 1.0).map(f).fold(f64::INFINITY, f64::min)
}

fn model_floor_suite(
    ctx: &Ctx,
    exprs: impl Fn(&Classification<f64>, &SpeedSample<f64>) -> Vec<f64> + Sync,
    label: &str,
) -> Result<(Tally, Metrics)> {
    let models = model_semigroups()?;
    let grid = grid(ctx.n)?;
    let (tally, mins) = ctx.run_par(&models, |(name, sg), t| {
        let class = classify(sg.domain());
        t.check(if class == sg.classification() { 0.0 } else { -1.0 });
        let rows = sample_speeds(sg, &grid)?;
        let count = exprs(&class, &rows[0]).len();
        let mut worst = Vec::with_capacity(count);
        for k in 0..count {
            let m = min_over(&rows, |s| exprs(&class, s)[k]);
            t.check(m - LOWER_FLOOR);
            worst.push(m);
        }
        Ok((name.clone(), worst))
    })?;
    let mut metrics = Metrics::new();
    for (name, worst) in mins {
        for (k, m) in worst.into_iter().enumerate() {
            metrics.insert(format!("{label}{k}_min[{name}]"), m);
        }
    }
    Ok((tally, metrics))
}

pub(super) fn lower_bounds(ctx: &Ctx) -> Result<(Tally, Metrics)> {
    model_floor_suite(
        ctx,
        |c, s| {
            vec![match c {
                Classification::Hyperbolic { lambda } => s.v - 0.5 * lambda * s.t,
                Classification::ParabolicPositiveStep => s.v - s.t.ln(),
                Classification::ParabolicZeroStep => s.v - 0.25 * s.t.ln(),
            }]
        },
        "v",
    )
}

pub(super) fn betsakos(ctx: &Ctx) -> Result<(Tally, Metrics)> {
    model_floor_suite(
        ctx,
        |c, s| {
            let mut out = vec![s.v_o - 0.25 * s.t.ln()];
            if *c == Classification::ParabolicPositiveStep {
                out.push(s.v_o - 0.5 * s.t.ln());
            }
            out
        },
        "v_o",
    )
}

/// `v, v° >= (π/(4m)) log t - C` for images inside a sector of half-opening
/// `m` around the upward axis.
pub(super) fn sector_bound(ctx: &Ctx) -> Result<(Tally, Metrics)> {
    let mut rng = ctx.rng();
    let mut sectors: Vec<(String, KoenigsSemigroup<f64>)> = model_semigroups()?
        .into_iter()
        .filter(|(_, sg)| matches!(sg.domain().kind(), DomainKind::Sector { .. }))
        .collect();
    while sectors.len() < 2 + EXTRA_DOMAINS {
        let d = super::random_domain(&mut rng);
        if matches!(d.kind(), DomainKind::Sector { .. }) {
            sectors.push((d.to_params().to_json(), KoenigsSemigroup::new(d)?));
        }
    }
    let grid = grid(ctx.n)?;
    let (tally, mins) = ctx.run_par(&sectors, |(name, sg), t| {
        let DomainKind::Sector { alpha, beta, .. } = *sg.domain().kind() else {
            unreachable!("filtered to sectors")
        };
        let c = PI / (4.0 * alpha.max(beta));
        let rows = sample_speeds(sg, &grid)?;
        let mv = min_over(&rows, |s| s.v - c * s.t.ln());
        let mo = min_over(&rows, |s| s.v_o - c * s.t.ln());
        t.check(mv - LOWER_FLOOR);
        t.check(mo - LOWER_FLOOR);
        Ok((name.clone(), mv.min(mo)))
    })?;
    let mut metrics = Metrics::new();
    for (name, m) in mins {
        metrics.insert(format!("min[{name}]"), m);
    }
    Ok((tally, metrics))
}

pub(super) fn semigroup(ctx: &Ctx) -> Result<(Tally, Metrics)> {
    let mut rng = ctx.rng();
    let catalog = semigroup_catalog(&mut rng, EXTRA_DOMAINS)?;
    let samples: Vec<_> = (0..ctx.n)
        .map(|_| {
            (
                rng.gen_range(0..catalog.len()),
                disc_point(&mut rng, 4.0),
                disc_point(&mut rng, 4.0),
                rng.gen_range(0.0..2.0),
                rng.gen_range(0.0..2.0),
                10f64.powf(rng.gen_range(-2.0..4.0)),
            )
        })
        .collect();
    let (mut tally, _) = ctx.run_par(&samples, |&(k, z1, z2, s, dt, far), t| {
        let sg = &catalog[k].1;
        t.check(if orbit(sg, z1, 0.0)? == z1 { 0.0 } else { -1.0 });
        // semigroup law, allowing for the rounding of the intermediate disc point
        let mid = orbit(sg, z1, s)?;
        let lhs = sg.orbit_frame(mid, dt)?;
        let rhs = sg.orbit_frame(z1, s + dt)?;
        t.check(1e-8_f64.max(4e-15 / mid.gap()) - k_half(lhs, rhs));
        // Schwarz-Pick
        let moved = k_half(sg.orbit_frame(z1, far)?, sg.orbit_frame(z2, far)?);
        t.le(moved, omega(z1, z2));
        Ok(())
    })?;
    // Denjoy-Wolff point and the step of each model
    for (_, sg) in &catalog {
        let tau = denjoy_wolff(sg);
        tally.check(1e-12 - (tau.norm() - 1.0).abs());
        let near = sg.orbit(DiscPoint::origin(), 1e14)?;
        tally.check(1e-4 - (near.value() - tau).norm());
        let step = sg.step(1e8)?;
        let expect_positive = !matches!(sg.classification(), Classification::ParabolicZeroStep);
        tally.check(if (step > 1e-3) == expect_positive { 0.0 } else { -1.0 });
    }
    // v° grows without bound; zero-step growth is about ¼ log t, hence the long span
    let mut metrics = Metrics::new();
    for (name, sg) in &catalog {
        let ends = sample_speeds(sg, &[1.0, 1e20])?;
        let growth = ends[1].v_o - ends[0].v_o;
        tally.check(growth - 10.0);
        metrics.insert(format!("v_o_growth[{name}]"), growth);
    }
    Ok((tally, metrics))
}

pub(super) fn basepoint(ctx: &Ctx) -> Result<(Tally, Metrics)> {
    let mut rng = ctx.rng();
    let catalog = semigroup_catalog(&mut rng, EXTRA_DOMAINS)?;
    let times = geometric_grid(1e-2, 1e8, 24)?;
    let samples: Vec<_> = (0..ctx.n)
        .map(|_| {
            (
                rng.gen_range(0..catalog.len()),
                disc_point(&mut rng, 4.0),
                disc_point(&mut rng, 4.0),
            )
        })
        .collect();
    let (tally, ratios) = ctx.run_par(&samples, |&(k, z1, z2), t| {
        let sg = &catalog[k].1;
        let d = omega(z1, z2);
        let a = sample_speeds(&OrbitFrom::new(sg, z1), &times)?;
        let b = sample_speeds(&OrbitFrom::new(sg, z2), &times)?;
        let mut worst: f64 = 0.0;
        for (x, y) in a.iter().zip(&b) {
            t.le((x.v_o - y.v_o).abs(), d);
            t.le((x.v_t - y.v_t).abs(), 2.0 * d);
            if d > 0.0 {
                worst = worst.max((x.v_t - y.v_t).abs() / d);
            }
        }
        Ok(worst)
    })?;
    let mut metrics = Metrics::new();
    metrics.insert(
        "max_tangential_change_per_distance".into(),
        ratios.iter().copied().fold(0.0, f64::max),
    );
    Ok((tally, metrics))
}

pub(super) fn conjugation(ctx: &Ctx) -> Result<(Tally, Metrics)> {
    let mut rng = ctx.rng();
    let models = model_semigroups()?;
    let times = geometric_grid(1e-2, 1e8, 64)?;
    let samples: Vec<_> = (0..ctx.n)
        .map(|_| (rng.gen_range(0..models.len()), random_automorphism(&mut rng, 3.0)))
        .collect();
    let base: Vec<Vec<SpeedSample<f64>>> = models
        .iter()
        .map(|(_, sg)| sample_speeds(sg, &times))
        .collect::<Result<_>>()?;
    let (tally, sups) = ctx.run_par(&samples, |&(k, m), t| {
        let sg = &models[k].1;
        let conj = Conjugated::new(sg, m);
        let c0 = 2.0 * omega(conj.start(), DiscPoint::origin());
        let rows = sample_speeds(&conj, &times)?;
        let mut sup = [0.0f64; 3];
        for (x, y) in base[k].iter().zip(&rows) {
            sup[0] = sup[0].max((x.v - y.v).abs());
            sup[1] = sup[1].max((x.v_o - y.v_o).abs());
            sup[2] = sup[2].max((x.v_t - y.v_t).abs());
        }
        for s in sup {
            t.le(s, 2.0 * c0 + 4.0);
        }
        Ok((sup, c0))
    })?;
    let mut metrics = Metrics::new();
    for (k, col) in ["v", "v_o", "v_t"].iter().enumerate() {
        let sup = sups.iter().map(|(s, _)| s[k]).fold(0.0, f64::max);
        let excess = sups.iter().map(|(s, c0)| s[k] - c0).fold(f64::NEG_INFINITY, f64::max);
        metrics.insert(format!("sup_abs_diff_{col}"), sup);
        metrics.insert(format!("max_excess_over_c0_{col}"), excess);
    }
    Ok((tally, metrics))
}
