//! Suites on the geometry of the disc, the half-plane and the model domains.

use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use num_complex::Complex;
use rand::Rng;

use super::{disc_point, half_plane_angle, random_domain, Ctx, Metrics, Tally};
use crate::domains::{
    build_domain, delta, delta_pm, k_domain, DomainKind, DomainSpec, quasihyp_lower_at, to_halfplane, OmegaSign, PlaneValue,
};
use crate::error::Result;
use crate::hyp_core::{
    cayley, cayley_inv, dist_to_radius, k_half, kappa, omega, path_length, project_to_radius,
    DiscAutomorphism, DiscPoint, HalfPlanePoint, RadialGeodesic, Space,
};

fn hp(log_rho: f64, theta: f64) -> Result<HalfPlanePoint<f64>> {
    HalfPlanePoint::new(log_rho, theta)
}

fn worst_of(name: &str, parts: &[f64], metrics: &mut Metrics) {
    let w = parts.iter().copied().fold(f64::INFINITY, f64::min);
    metrics.insert(name.to_string(), w);
}

struct LemmaSample {
    l0: f64,
    l1: f64,
    span: f64,
    beta: f64,
    beta0: f64,
    beta1: f64,
    alpha: f64,
    u1: f64,
    u2: f64,
    th_a: f64,
    th_b: f64,
}

pub(super) fn lemma_halfplane(ctx: &Ctx) -> Result<(Tally, Metrics)> {
    let mut rng = ctx.rng();
    let samples: Vec<LemmaSample> = (0..ctx.n)
        .map(|_| {
            let u1 = rng.gen_range(0.0..10.0);
            let th_a = rng.gen_range(0.0..FRAC_PI_2);
            LemmaSample {
                l0: rng.gen_range(-20.0..20.0),
                l1: rng.gen_range(-20.0..20.0),
                span: rng.gen_range(1e-3..6.0),
                beta: half_plane_angle(&mut rng),
                beta0: half_plane_angle(&mut rng),
                beta1: half_plane_angle(&mut rng),
                alpha: half_plane_angle(&mut rng),
                u1,
                u2: u1 + rng.gen_range(0.0..10.0),
                th_a,
                th_b: rng.gen_range(th_a..FRAC_PI_2),
            }
        })
        .collect();
    let (tally, items) = ctx.run_par(&samples, |s, t| {
        let mut item = [f64::INFINITY; 6];
        let mut note = |k: usize, t: &mut Tally, m: f64| {
            t.check(m);
            item[k] = item[k].min(m);
        };
        let cb = s.beta.cos();

        // (1) radial segments: length and distance
        let pieces = 64;
        let ray: Vec<Complex<f64>> = (0..=pieces)
            .map(|k| Complex::from_polar((s.l0 + s.span * k as f64 / pieces as f64).exp(), s.beta))
            .collect();
        let len = path_length(Space::HalfPlane, &ray)?;
        let exact_len = s.span / (2.0 * cb);
        note(0, t, 1e-5 - (len - exact_len).abs() / exact_len.max(1.0));
        let k01 = k_half(hp(s.l0, 0.0)?, hp(s.l0 + s.span, 0.0)?);
        note(0, t, -(k01 - 0.5 * s.span).abs() / k01.max(1.0));

        // (2) leaving the axis costs at least ½ log(1/cos β)
        let base = k_half(hp(s.l0, 0.0)?, hp(s.l1, 0.0)?);
        let off = k_half(hp(s.l0, 0.0)?, hp(s.l1, s.beta)?);
        note(1, t, off - base - 0.5 * (1.0 / cb).ln());

        // (3) minimum at equal moduli, monotone on both sides
        let f = |u: f64| -> Result<f64> { Ok(k_half(hp(s.l0 + u, s.alpha)?, hp(s.l0, s.beta)?)) };
        let (f0, f1, f2, g1, g2) = (f(0.0)?, f(s.u1)?, f(s.u2)?, f(-s.u1)?, f(-s.u2)?);
        note(2, t, f1 - f0);
        note(2, t, f2 - f1);
        note(2, t, g1 - f0);
        note(2, t, g2 - g1);

        // (4) dilation invariance, evenness, monotonicity in the angle
        let d_scaled = k_half(hp(s.l1, s.beta0)?, hp(s.l1, s.beta1)?);
        let d_unit = k_half(hp(0.0, s.beta0)?, hp(0.0, s.beta1)?);
        note(3, t, -(d_scaled - d_unit).abs() / d_unit.max(1.0));
        let pos = k_half(hp(0.0, 0.0)?, hp(0.0, s.th_b)?);
        let neg = k_half(hp(0.0, 0.0)?, hp(0.0, -s.th_b)?);
        note(3, t, -(pos - neg).abs() / pos.max(1.0));
        note(3, t, pos - k_half(hp(0.0, 0.0)?, hp(0.0, s.th_a)?));

        // (5) distance dominates the distance of the moduli
        note(4, t, k_half(hp(s.l0, s.beta0)?, hp(s.l1, s.beta1)?) - base);

        // (6) points of equal modulus
        let same = k_half(hp(s.l0, 0.0)?, hp(s.l0, s.beta)?);
        note(5, t, 0.5 * (1.0 / cb).ln() + 0.5 * LN_2 - same);
        Ok(item)
    })?;
    let mut metrics = Metrics::new();
    for k in 0..6 {
        let col: Vec<f64> = items.iter().map(|i| i[k]).collect();
        worst_of(&format!("item{}_worst_margin", k + 1), &col, &mut metrics);
    }
    Ok((tally, metrics))
}

/// A diameter and the largest ω-radius at which its points are sampled.
///
/// Along the coordinate axes every quantity is computed without rotating
/// the sample, so points can be taken much closer to the circle.
fn random_geodesic(rng: &mut rand_chacha::ChaCha8Rng) -> Result<(RadialGeodesic<f64>, f64)> {
    if rng.gen_bool(0.5) {
        let taus = [
            Complex::new(1.0, 0.0),
            Complex::new(0.0, 1.0),
            Complex::new(-1.0, 0.0),
            Complex::new(0.0, -1.0),
        ];
        Ok((RadialGeodesic::new(taus[rng.gen_range(0..4)])?, 12.0))
    } else {
        Ok((RadialGeodesic::from_angle(rng.gen_range(-PI..PI)), 6.0))
    }
}

pub(super) fn pythagoras(ctx: &Ctx) -> Result<(Tally, Metrics)> {
    let mut rng = ctx.rng();
    let samples = (0..ctx.n)
        .map(|_| {
            let (geo, dmax) = random_geodesic(&mut rng)?;
            let s = rng.gen_range(-6.0..6.0);
            Ok((geo, geo.point_at(s), disc_point(&mut rng, dmax)))
        })
        .collect::<Result<Vec<_>>>()?;
    let (tally, gaps) = ctx.run_par(&samples, |(geo, x0, z), t| {
        // ω(x₀, π(z)) is the arc length between the two positions on the diameter
        let along = (geo.coordinate(*x0) - geo.coordinate(*z)).abs();
        let across = dist_to_radius(*z, *geo);
        let direct = omega(*x0, *z);
        t.le(direct, along + across);
        t.le(along + across - 0.5 * LN_2, direct);
        Ok((along + across - direct, direct - (along + across - 0.5 * LN_2)))
    })?;
    let upper = gaps.iter().map(|g| g.0).fold(f64::INFINITY, f64::min);
    let lower = gaps.iter().map(|g| g.1).fold(f64::INFINITY, f64::min);
    let mut tally = tally;
    // the upper inequality is sharp: some sample must come close to it
    tally.check(0.05 - upper);
    let mut metrics = Metrics::new();
    metrics.insert("min_upper_gap".into(), upper);
    metrics.insert("min_lower_gap".into(), lower);
    Ok((tally, metrics))
}

pub(super) fn contraction(ctx: &Ctx) -> Result<(Tally, Metrics)> {
    let mut rng = ctx.rng();
    let samples = (0..ctx.n)
        .map(|_| {
            let (geo, dmax) = random_geodesic(&mut rng)?;
            Ok((geo, dmax, disc_point(&mut rng, dmax), disc_point(&mut rng, dmax)))
        })
        .collect::<Result<Vec<_>>>()?;
    let (tally, ratios) = ctx.run_par(&samples, |(geo, dmax, z, w), t| {
        let d = omega(*z, *w);
        let projected = if *dmax <= 6.0 {
            omega(project_to_radius(*z, *geo), project_to_radius(*w, *geo))
        } else {
            (geo.coordinate(*z) - geo.coordinate(*w)).abs()
        };
        t.le(projected, d);
        // the distance to the diameter is 1-Lipschitz
        t.le((dist_to_radius(*z, *geo) - dist_to_radius(*w, *geo)).abs(), d);
        Ok(if d > 0.0 { projected / d } else { 0.0 })
    })?;
    let mut metrics = Metrics::new();
    metrics.insert("max_ratio".into(), ratios.iter().copied().fold(0.0, f64::max));
    Ok((tally, metrics))
}

/// Golden-section minimizer of `f` on `[lo, hi]`.
fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - g * (hi - lo);
    let mut b = lo + g * (hi - lo);
    let (mut fa, mut fb) = (f(a), f(b));
    for _ in 0..iters {
        if fa <= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - g * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + g * (hi - lo);
            fb = f(b);
        }
    }
    0.5 * (lo + hi)
}

pub(super) fn projection(ctx: &Ctx) -> Result<(Tally, Metrics)> {
    let mut rng = ctx.rng();
    let geo = RadialGeodesic::new(Complex::new(1.0, 0.0))?;
    let samples: Vec<DiscPoint<f64>> = (0..ctx.n).map(|_| disc_point(&mut rng, 12.0)).collect();
    let (tally, errs) = ctx.run_par(&samples, |z, t| {
        let dist = |r: f64| match DiscPoint::new(Complex::new(r, 0.0)) {
            Ok(x) => omega(x, *z),
            Err(_) => f64::INFINITY,
        };
        let edge = 1.0 - 1e-12;
        let r_gs = golden_section(dist, -edge, edge, 200);
        let r_cf = project_to_radius(*z, geo).value().re;
        let err = (r_gs - r_cf).abs();
        t.check(1e-6 - err);
        // the closed form is at least as good a minimizer, measured in the
        // half-plane frame where distances to the axis are exact
        let w = geo.to_halfplane(*z);
        let along = |s: f64| k_half(HalfPlanePoint::from_log_real(2.0 * s), w);
        t.le(along(geo.coordinate(*z)), along(r_gs.atanh()));
        Ok(err)
    })?;
    let mut metrics = Metrics::new();
    metrics.insert("max_argmin_error".into(), errs.iter().copied().fold(0.0, f64::max));
    Ok((tally, metrics))
}

pub(super) fn isometries(ctx: &Ctx) -> Result<(Tally, Metrics)> {
    let mut rng = ctx.rng();
    let samples: Vec<_> = (0..ctx.n)
        .map(|_| {
            let z1 = disc_point(&mut rng, 10.0);
            let z2 = disc_point(&mut rng, 10.0);
            // images of y under m1, m2 stay within ω-radius 9 of the origin
            let m1 = DiscAutomorphism::new(disc_point(&mut rng, 3.0), rng.gen_range(-PI..PI));
            let m2 = DiscAutomorphism::new(disc_point(&mut rng, 3.0), rng.gen_range(-PI..PI));
            let v = Complex::from_polar(1.0, rng.gen_range(-PI..PI));
            (z1, z2, m1, m2, v, disc_point(&mut rng, 3.0), disc_point(&mut rng, 3.0))
        })
        .collect();
    let (tally, _) = ctx.run_par(&samples, |&(z1, z2, m1, m2, v, y1, y2), t| {
        let d = omega(z1, z2);
        t.close(k_half(cayley(z1), cayley(z2)), d, 1e-10);
        t.check(1e-13 - (cayley_inv(cayley(y1)).value() - y1.value()).norm());

        let dy = omega(y1, y2);
        t.close(omega(m1.apply(y1), m1.apply(y2)), dy, 1e-10);
        let composed = m1.compose(&m2).apply(y1);
        t.check(1e-8 - omega(composed, m1.apply(m2.apply(y1))));

        // infinitesimal form: the Cayley map carries κ_𝔻 to κ_ℍ
        let one = Complex::new(1.0, 0.0);
        let y = y1.value();
        let dc = 2.0 / ((one - y) * (one - y));
        let kd = kappa(Space::Disc, y, v)?;
        let kh = kappa(Space::HalfPlane, cayley(y1).to_complex(), dc * v)?;
        t.close(kd, kh, 1e-10);

        // length of a diameter segment equals the distance of its ends
        let reach = omega(DiscPoint::origin(), y1);
        let pieces = 32;
        let radial: Vec<Complex<f64>> = (0..=pieces)
            .map(|k| Complex::from_polar((reach * k as f64 / pieces as f64).tanh(), y.arg()))
            .collect();
        t.close(path_length(Space::Disc, &radial)?, reach, 1e-9);
        // and any polyline is at least as long as the distance of its ends;
        // edges are cut so that Re w changes geometrically along each piece
        let ends = [cayley(y1).to_complex(), cayley(y2).to_complex()];
        let mid = Complex::new(ends[0].re.max(ends[1].re) * 1.5, 0.5 * (ends[0].im + ends[1].im));
        let mut poly = Vec::new();
        for (a, b) in [(ends[0], mid), (mid, ends[1])] {
            for k in 0..pieces {
                let re = a.re * (b.re / a.re).powf(k as f64 / pieces as f64);
                poly.push(a + (b - a) * ((re - a.re) / (b.re - a.re)));
            }
        }
        poly.push(ends[1]);
        t.le(k_half(cayley(y1), cayley(y2)), path_length(Space::HalfPlane, &poly)? * (1.0 + 1e-9));
        Ok(())
    })?;
    Ok((tally, Metrics::new()))
}

pub(super) fn domains(ctx: &Ctx) -> Result<(Tally, Metrics)> {
    let mut rng = ctx.rng();
    let samples: Vec<_> = (0..ctx.n)
        .map(|_| {
            (
                random_domain(&mut rng),
                disc_point(&mut rng, 5.0),
                disc_point(&mut rng, 5.0),
                rng.gen_range(0.0..20.0),
                10f64.powf(rng.gen_range(-1.0..4.0)),
            )
        })
        .collect();
    let (tally, _) = ctx.run_par(&samples, |(dom, z1, z2, lift, height), t| {
        let rebuilt = build_domain::<f64>(&dom.to_params())?;
        t.check(if rebuilt == *dom { 0.0 } else { -1.0 });

        let chain = to_halfplane(dom)?;
        let to_plane = |z: DiscPoint<f64>| -> Result<Complex<f64>> {
            Ok(chain.inverse_value(PlaneValue::from_halfplane(cayley(z)))?.to_complex())
        };
        let (q1, q2) = (to_plane(*z1)?, to_plane(*z2)?);
        t.check(if dom.contains(q1) && dom.contains(q2) { 0.0 } else { -1.0 });
        let back = chain.forward(q1)?.to_halfplane()?;
        t.check(1e-8 - k_half(back, cayley(*z1)));
        t.close(k_domain(dom, q1, q2)?, omega(*z1, *z2), 1e-8);

        // starlike at infinity, and enlarging the domain moves the boundary away
        let up = q1 + Complex::new(0.0, *lift);
        t.check(if dom.contains(up) { 0.0 } else { -1.0 });
        let d = delta(dom, q1)?;
        let reference = dom.base_point();
        t.le(d, delta_pm(dom, OmegaSign::plus(reference), q1)?);
        t.le(d, delta_pm(dom, OmegaSign::minus(reference), q1)?);
        t.le(d, delta(dom, up)?);

        // Koebe's estimate for the density of the hyperbolic metric
        let w = chain.forward(q1)?.to_halfplane()?;
        let density = (chain.log_abs_derivative(q1)? - w.log_re()).exp() / 2.0;
        t.le(0.25 / d, density * (1.0 + 1e-12));

        // integrated along a vertical geodesic of a symmetric domain it bounds
        // the distance
        if is_symmetric(dom) {
            let (x, t0) = (reference.re, reference.im);
            let lower = quasihyp_lower_at(dom, x, t0, t0 + height)?;
            let exact = k_domain(dom, Complex::new(x, t0), Complex::new(x, t0 + height))?;
            t.le(lower, exact);
        }
        Ok(())
    })?;
    Ok((tally, Metrics::new()))
}

/// Mirror-symmetric about the vertical line through the base point, so that
/// line is a geodesic.
fn is_symmetric(dom: &DomainSpec<f64>) -> bool {
    match *dom.kind() {
        DomainKind::Strip { .. } | DomainKind::Koebe { .. } => true,
        DomainKind::Sector { alpha, beta, .. } => alpha == beta,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_section_finds_parabola_minimum() {
        let m = golden_section(|x| (x - 0.3) * (x - 0.3), -1.0, 1.0, 200);
        assert!((m - 0.3).abs() < 1e-8);
    }
}
