//! Worked values, each checked against a formula evaluated here rather than
//! through the library's own code path.

use std::f64::consts::{E, FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, LN_2, PI};

use approx::assert_abs_diff_eq;
use num_complex::Complex;

use hypspeed::comb_builder::{build_comb, verify_comb, ASpec, GSpec};
use hypspeed::domains::{
    delta, delta_pm, k_domain, quasihyp_lower, to_halfplane, DomainSpec, OmegaSign,
};
use hypspeed::hyp_core::{
    cayley, cayley_inv, dist_to_radius, dist_to_real_axis, k_half, kappa, omega, path_length,
    project_to_radius, project_to_real_axis, DiscPoint, HalfPlanePoint, RadialGeodesic, Space,
};
use hypspeed::semigroups::{classify, denjoy_wolff, orbit, Classification, KoenigsSemigroup};
use hypspeed::speeds::{
    fit_speeds, geometric_grid, nontangential_ratio, sample_speeds, surrogate_speeds, Basis,
    SpeedColumn,
};

fn c(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

fn dp(re: f64, im: f64) -> DiscPoint<f64> {
    DiscPoint::new(c(re, im)).unwrap()
}

fn hp(w: Complex<f64>) -> HalfPlanePoint<f64> {
    HalfPlanePoint::from_complex(w).unwrap()
}

/// `atanh |z - w| / |1 - w̄ z|`.
fn omega_oracle(z: Complex<f64>, w: Complex<f64>) -> f64 {
    ((z - w).norm() / (1.0 - w.conj() * z).norm()).atanh()
}

/// `atanh |w1 - w2| / |w1 + w̄2|`.
fn k_half_oracle(w1: Complex<f64>, w2: Complex<f64>) -> f64 {
    ((w1 - w2).norm() / (w1 + w2.conj()).norm()).atanh()
}

#[test]
fn disc_distance() {
    assert_eq!(omega(dp(0.0, 0.0), dp(0.0, 0.0)), 0.0);
    let d = omega(dp(0.0, 0.0), dp(0.5, 0.0));
    assert_abs_diff_eq!(d, 0.5 * 3f64.ln(), epsilon = 1e-14);
    assert_abs_diff_eq!(d, omega_oracle(c(0.0, 0.0), c(0.5, 0.0)), epsilon = 1e-14);
    assert_eq!(omega(dp(0.5, 0.0), dp(0.0, 0.0)), d);
    let (z, w) = (c(0.3, -0.6), c(-0.7, 0.1));
    assert_abs_diff_eq!(omega(dp(z.re, z.im), dp(w.re, w.im)), omega_oracle(z, w), epsilon = 1e-13);
}

#[test]
fn half_plane_distance() {
    assert_eq!(k_half(hp(c(1.0, 0.0)), hp(c(1.0, 0.0))), 0.0);
    assert_abs_diff_eq!(k_half(hp(c(1.0, 0.0)), hp(c(E * E, 0.0))), 1.0, epsilon = 1e-14);
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    let d = k_half(hp(c(1.0, 0.0)), hp(c(1.0, 1.0)));
    assert_abs_diff_eq!(d, golden.ln(), epsilon = 1e-14);
    assert_abs_diff_eq!(d, k_half_oracle(c(1.0, 0.0), c(1.0, 1.0)), epsilon = 1e-14);
}

#[test]
fn infinitesimal_metrics() {
    assert_abs_diff_eq!(kappa(Space::Disc, c(0.0, 0.0), c(1.0, 0.0)).unwrap(), 1.0);
    assert_abs_diff_eq!(
        kappa(Space::Disc, c(0.5, 0.0), c(1.0, 0.0)).unwrap(),
        1.0 / (1.0 - 0.25),
        epsilon = 1e-15
    );
    assert_abs_diff_eq!(kappa(Space::HalfPlane, c(1.0, 0.0), c(1.0, 0.0)).unwrap(), 0.5);
}

#[test]
fn cayley_transform() {
    let w = cayley(dp(0.0, 0.0)).to_complex();
    assert_abs_diff_eq!((w - c(1.0, 0.0)).norm(), 0.0, epsilon = 1e-15);
    // z = i lies on the circle, where (1 + i)/(1 - i) = i; approach it radially
    for s in [0.9, 0.999, 0.999_999] {
        let z = c(0.0, s);
        let oracle = (c(1.0, 0.0) + z) / (c(1.0, 0.0) - z);
        let w = cayley(dp(z.re, z.im)).to_complex();
        assert!((w - oracle).norm() < 1e-12 * oracle.norm());
        assert!((w / w.norm() - c(0.0, 1.0)).norm() < 2.0 * (1.0 - s));
    }
    let z = dp(0.3, 0.2);
    let back = cayley_inv(cayley(z)).value();
    assert!((back - z.value()).norm() < 1e-15);
}

#[test]
fn radial_projection() {
    let tau = Complex::from_polar(1.0, 0.7);
    let geo = RadialGeodesic::new(tau).unwrap();
    let z = DiscPoint::new(tau * 0.4).unwrap();
    assert!((project_to_radius(z, geo).value() - tau * 0.4).norm() < 1e-15);
    assert_abs_diff_eq!(dist_to_radius(z, geo), 0.0, epsilon = 1e-15);

    let w = hp(Complex::from_polar(2.0, FRAC_PI_4));
    let p = project_to_real_axis(w).to_complex();
    assert!((p - c(2.0, 0.0)).norm() < 1e-14);

    // golden-section minimization of r ↦ ω(r, z) over the real diameter
    let z = c(0.3, 0.3);
    let f = |r: f64| omega_oracle(c(r, 0.0), z);
    let (mut lo, mut hi) = (-0.999_999, 0.999_999);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let (a, b) = (hi - g * (hi - lo), lo + g * (hi - lo));
        if f(a) < f(b) {
            hi = b;
        } else {
            lo = a;
        }
    }
    let got = project_to_radius(dp(0.3, 0.3), RadialGeodesic::new(c(1.0, 0.0)).unwrap()).value();
    assert!(got.im.abs() < 1e-15);
    assert!((got.re - 0.5 * (lo + hi)).abs() < 1e-6);
}

#[test]
fn distance_to_the_real_axis() {
    let a = dist_to_real_axis(hp(Complex::from_polar(2.0, FRAC_PI_3)));
    let b = dist_to_real_axis(hp(Complex::from_polar(5.0, FRAC_PI_3)));
    assert_abs_diff_eq!(a, b, epsilon = 1e-14);
    assert_abs_diff_eq!(a, k_half_oracle(Complex::from_polar(2.0, FRAC_PI_3), c(2.0, 0.0)), epsilon = 1e-14);
    assert_eq!(dist_to_real_axis(hp(c(3.0, 0.0))), 0.0);
    for k in 0..1000 {
        let theta = (k as f64 + 0.5) / 1000.0 * FRAC_PI_2 * if k % 2 == 0 { 1.0 } else { -1.0 };
        let d = dist_to_real_axis(HalfPlanePoint::new(0.0, theta).unwrap());
        assert!(d <= 0.5 * (1.0 / theta.cos()).ln() + 0.5 * LN_2 + 1e-12, "theta = {theta}");
    }
}

#[test]
fn polyline_lengths() {
    assert_eq!(path_length(Space::HalfPlane, &[c(1.0, 0.0), c(1.0, 0.0)]).unwrap(), 0.0);
    let n = 10_000;
    let radial: Vec<_> = (0..=n).map(|k| c(1.0 + (E - 1.0) * k as f64 / n as f64, 0.0)).collect();
    assert_abs_diff_eq!(path_length(Space::HalfPlane, &radial).unwrap(), 0.5, epsilon = 1e-6);
    // along a ray at angle β the density is 1/(2ρ cos β)
    let dir = Complex::from_polar(1.0, FRAC_PI_3);
    let ray: Vec<_> = (0..=n).map(|k| dir * (1.0 + (E - 1.0) * k as f64 / n as f64)).collect();
    assert_abs_diff_eq!(path_length(Space::HalfPlane, &ray).unwrap(), 1.0, epsilon = 1e-5);
}

#[test]
fn domain_validation() {
    assert!(DomainSpec::sector(c(0.0, 0.0), FRAC_PI_4, FRAC_PI_4).is_ok());
    assert!(DomainSpec::<f64>::sector(c(0.0, 0.0), 0.0, 0.0).is_err());
    assert!(DomainSpec::<f64>::from_json(r#"{"type":"comb","teeth":[[2,1],[1,3]]}"#).is_err());
}

#[test]
fn riemann_map_normalization() {
    let koebe = to_halfplane(&DomainSpec::koebe(c(0.0, 0.0))).unwrap();
    for t in [0.01, 1.0, 7.0, 1e6] {
        let w = koebe.forward(c(0.0, t)).unwrap().to_complex();
        assert!((w - c(t.sqrt(), 0.0)).norm() < 1e-12 * t.sqrt().max(1.0), "t = {t}");
    }
    let p = c(0.5, -1.0);
    let sector = to_halfplane(&DomainSpec::sector(p, 1.1, 1.1).unwrap()).unwrap();
    assert!((sector.forward(p + c(0.0, 1.0)).unwrap().to_complex() - c(1.0, 0.0)).norm() < 1e-14);
    let r = 2.5;
    let strip = to_halfplane(&DomainSpec::strip(r).unwrap()).unwrap();
    assert!((strip.forward(c(r / 2.0, 0.0)).unwrap().to_complex() - c(1.0, 0.0)).norm() < 1e-14);
}

#[test]
fn boundary_distance() {
    assert_eq!(delta(&DomainSpec::halfplane(c(0.0, 0.0)), c(1.0, 0.0)).unwrap(), 1.0);
    let koebe = DomainSpec::koebe(c(0.0, 0.0));
    for t in [0.5, 3.0, 1e5] {
        assert_abs_diff_eq!(delta(&koebe, c(0.0, t)).unwrap(), t, epsilon = 1e-12 * t);
    }
    let hpd = DomainSpec::halfplane(c(0.0, 0.0));
    let p = c(1.0, 0.0);
    assert_eq!(delta_pm(&hpd, OmegaSign::minus(p), c(1.0, 4.0)).unwrap(), f64::INFINITY);
    assert_abs_diff_eq!(delta_pm(&hpd, OmegaSign::plus(p), c(1.0, 4.0)).unwrap(), 1.0);
    let q = c(0.0, 1.0);
    for t in [0.3, 2.0, 50.0] {
        let plus = delta_pm(&koebe, OmegaSign::plus(q), c(0.0, t)).unwrap();
        let minus = delta_pm(&koebe, OmegaSign::minus(q), c(0.0, t)).unwrap();
        assert_abs_diff_eq!(plus, t, epsilon = 1e-12 * t);
        assert_abs_diff_eq!(minus, t, epsilon = 1e-12 * t);
    }
}

#[test]
fn domain_distances() {
    let koebe = DomainSpec::koebe(c(0.0, 0.0));
    assert_eq!(k_domain(&koebe, c(0.0, 1.0), c(0.0, 1.0)).unwrap(), 0.0);
    assert_abs_diff_eq!(
        k_domain(&koebe, c(0.0, 1.0), c(0.0, 4f64.exp())).unwrap(),
        1.0,
        epsilon = 1e-12
    );
    // in the strip {0 < Re < r} the map is w ↦ exp(-iπ(w - r/2)/r)·…, radial in ℍ
    let r = 1.7;
    let strip = DomainSpec::strip(r).unwrap();
    for t in [0.1, 1.0, 10.0] {
        let got = k_domain(&strip, c(r / 2.0, 0.0), c(r / 2.0, t)).unwrap();
        assert_abs_diff_eq!(got, PI * t / (2.0 * r), epsilon = 1e-12 * t.max(1.0));
    }
}

#[test]
fn quasi_hyperbolic_integrals() {
    let koebe = DomainSpec::koebe(c(0.0, 0.0));
    assert_eq!(quasihyp_lower(&koebe, 3.0, 3.0).unwrap(), 0.0);
    for big in [10.0, 1e4, 1e8] {
        let q = quasihyp_lower(&koebe, 1.0, big).unwrap();
        assert_abs_diff_eq!(q, 0.25 * f64::ln(big), epsilon = 1e-8);
    }
    let cc = build_comb::<f64>(GSpec::Log1p, &ASpec::Linear, 5).unwrap();
    for j in 1..=5 {
        let (x, b, a) = (cc.x[j - 1], cc.b[j], cc.a[j]);
        let q = quasihyp_lower(cc.domain(), x, b).unwrap();
        let want = (b - x) / (4.0 * a);
        assert!((q - want).abs() <= 1e-8 * want, "j = {j}: {q} vs {want}");
    }
}

#[test]
fn classification() {
    assert_eq!(
        classify(&DomainSpec::strip(FRAC_PI_2).unwrap()),
        Classification::Hyperbolic { lambda: 2.0 }
    );
    assert_eq!(classify(&DomainSpec::koebe(c(0.0, 0.0))), Classification::ParabolicZeroStep);
    assert_eq!(
        classify(&DomainSpec::sector(c(0.0, 0.0), PI, 0.0).unwrap()),
        Classification::ParabolicPositiveStep
    );
}

#[test]
fn orbits_and_denjoy_wolff_points() {
    let origin = dp(0.0, 0.0);
    let koebe = KoenigsSemigroup::new(DomainSpec::koebe(c(0.0, 0.0))).unwrap();
    assert_eq!(orbit(&koebe, dp(0.2, 0.1), 0.0).unwrap().value(), c(0.2, 0.1));
    let tau = denjoy_wolff(&koebe);
    let mut last = f64::INFINITY;
    for t in geometric_grid(1.0, 1e12, 13).unwrap() {
        let gap = (orbit(&koebe, origin, t).unwrap().value() - tau).norm();
        assert!(gap < last);
        last = gap;
    }
    assert!(last < 1e-3);

    let half = KoenigsSemigroup::new(DomainSpec::halfplane(c(0.0, 0.0))).unwrap();
    assert!((denjoy_wolff(&half) - cayley_inv_boundary_infinity()).norm() < 1e-12);

    let strip = KoenigsSemigroup::new(DomainSpec::strip(1.3).unwrap()).unwrap();
    let tau = denjoy_wolff(&strip);
    assert_abs_diff_eq!(tau.norm(), 1.0, epsilon = 1e-12);
    assert!((orbit(&strip, origin, 1e6).unwrap().value() - tau).norm() < 1e-6);
}

/// `C⁻¹(w) = (w - 1)/(w + 1)` tends to `1` as `w → ∞`.
fn cayley_inv_boundary_infinity() -> Complex<f64> {
    let w = c(1e15, 0.0);
    (w - 1.0) / (w + 1.0)
}

#[test]
fn speeds_of_the_models() {
    let koebe = KoenigsSemigroup::new(DomainSpec::koebe(c(0.0, 0.0))).unwrap();
    let s = sample_speeds(&koebe, &[0.0]).unwrap()[0];
    assert_eq!((s.v, s.v_o, s.v_t), (0.0, 0.0, 0.0));

    let grid = geometric_grid(1e3, 1e8, 256).unwrap();
    let rows = sample_speeds(&koebe, &grid).unwrap();
    let sup = rows.iter().map(|s| (s.v - 0.25 * s.t.ln()).abs()).fold(0.0, f64::max);
    assert!(sup < 2.0);
    let fit = fit_speeds(&rows, SpeedColumn::V, Basis::LogT, (1e4, 1e8)).unwrap();
    assert_abs_diff_eq!(fit.coefficient, 0.25, epsilon = 0.02);

    let sym = KoenigsSemigroup::new(DomainSpec::sector(c(0.0, 0.0), FRAC_PI_4, FRAC_PI_4).unwrap()).unwrap();
    let vt = sample_speeds(&sym, &geometric_grid(1.0, 1e8, 256).unwrap()).unwrap();
    assert!(vt.iter().all(|s| s.v_t < 3.0));

    let strip = KoenigsSemigroup::new(DomainSpec::strip(FRAC_PI_2).unwrap()).unwrap();
    let rows = sample_speeds(&strip, &geometric_grid(1.0, 1e8, 256).unwrap()).unwrap();
    let fit = fit_speeds(&rows, SpeedColumn::V, Basis::T, (1e6, 1e8)).unwrap();
    assert_abs_diff_eq!(fit.coefficient, 1.0, epsilon = 0.01);
}

#[test]
fn surrogate_identities() {
    let koebe = KoenigsSemigroup::new(DomainSpec::koebe(c(0.0, 0.0))).unwrap();
    let grid = geometric_grid(1.0, 1e6, 128).unwrap();
    for s in surrogate_speeds(&koebe, &grid).unwrap() {
        assert!(s.dev_total.abs() <= 0.5 * LN_2 + 1e-12);
        assert!(s.dev_orth.abs() <= 0.5 * LN_2 + 1e-12);
        assert!(s.dev_tang.abs() <= 1.5 * LN_2 + 1e-12);
        assert!((s.s_tang - (s.s_total - s.s_orth)).abs() <= 1e-12 * s.s_total.abs().max(1.0));
    }
    let half = KoenigsSemigroup::new(DomainSpec::sector(c(0.0, 0.0), PI, 0.0).unwrap()).unwrap();
    let grid = geometric_grid(1.0, 1e8, 128).unwrap();
    let rows = surrogate_speeds(&half, &grid).unwrap();
    assert!(rows.last().unwrap().s_tang > rows[0].s_tang + 5.0);
    let sup = rows.iter().map(|s| (s.s_tang - 0.5 * s.t.ln()).abs()).fold(0.0, f64::max);
    assert!(sup < 5.0);
}

#[test]
fn tangential_ratio_examples() {
    let half = KoenigsSemigroup::new(DomainSpec::halfplane(c(0.0, 0.0))).unwrap();
    for t in [0.5, 10.0, 1e8] {
        // δ⁻ = ∞ and δ⁺(1 + it) = 1
        let r = nontangential_ratio(&half, c(1.0, 0.0), t).unwrap();
        assert_abs_diff_eq!(r, t / t.min(1.0), epsilon = 1e-12 * t);
    }
    let koebe = KoenigsSemigroup::new(DomainSpec::koebe(c(0.0, 0.0))).unwrap();
    let sym = KoenigsSemigroup::new(DomainSpec::sector(c(0.0, 0.0), 1.2, 1.2).unwrap()).unwrap();
    for t in [0.1, 3.0, 1e7] {
        assert_abs_diff_eq!(nontangential_ratio(&koebe, c(0.0, 1.0), t).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(nontangential_ratio(&sym, c(0.0, 1.0), t).unwrap(), 1.0, epsilon = 1e-12);
    }
}

#[test]
fn comb_examples() {
    let cc = build_comb::<f64>(GSpec::Log1p, &ASpec::Linear, 10).unwrap();
    assert_eq!(cc.b[0], 1.0);
    assert_abs_diff_eq!(cc.x[0], 1.0 + 3f64.sqrt(), epsilon = 1e-12);
    for j in 1..=10 {
        let (a_next, b_next, x) = (cc.a[j], cc.b[j], cc.x[j - 1]);
        let g = (1.0 + b_next).ln();
        assert!((j as f64 * a_next * g + x) / b_next < 1.0, "j = {j}");
        // |i x_j - (a_j + i b_j)| = a_{j+1}
        assert_abs_diff_eq!((c(0.0, x) - c(cc.a[j - 1], cc.b[j - 1])).norm(), a_next, epsilon = 1e-9 * a_next);
    }
    for r in verify_comb(&cc).unwrap() {
        assert!(r.ratio >= r.j as f64 / 4.0);
        assert!(r.plateau_ratio >= r.j as f64 / 4.0 - 1e-9);
    }
    assert!(build_comb::<f64>(GSpec::Pow(1.0), &ASpec::Linear, 3).is_err());
    let one = build_comb::<f64>(GSpec::Log1p, &ASpec::Linear, 1).unwrap();
    assert!(verify_comb(&one).unwrap()[0].ratio >= 0.25);
}
