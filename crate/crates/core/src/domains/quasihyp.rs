//! `¼ ∫ dr / δ(x + ir)`, a lower bound for the hyperbolic distance along a
//! vertical segment.

use num_complex::Complex;

use super::geometry::{complement_distance, delta};
use super::{DomainKind, DomainSpec};
use crate::error::{HypError, Result};
use crate::quadrature::{integrate_adaptive, AdaptiveOptions};
use crate::scalar::Real;

/// `¼ ∫_{t0}^{t1} dr / δ(ir)`.
pub fn quasihyp_lower<T: Real>(domain: &DomainSpec<T>, t0: T, t1: T) -> Result<T> {
    quasihyp_lower_at(domain, T::zero(), t0, t1)
}

/// `¼ ∫_{t0}^{t1} dr / δ(x + ir)`.
pub fn quasihyp_lower_at<T: Real>(domain: &DomainSpec<T>, x: T, t0: T, t1: T) -> Result<T> {
    if !(t0 <= t1) || !t1.is_finite() {
        return Err(HypError::domain(format!("need finite t0 <= t1, got [{t0}, {t1}]")));
    }
    // starlike at infinity: the segment is inside iff its lower end is,
    // and for a comb the upper end must stay below the materialized extent
    delta(domain, Complex::new(x, t0))?;
    if t0 == t1 {
        return Ok(T::zero());
    }
    let quarter = T::lit(0.25);
    if let DomainKind::Comb { teeth } = domain.kind() {
        delta(domain, Complex::new(x, t1))?;
        let rays: Vec<(T, T)> = teeth
            .iter()
            .flat_map(|t| [((x - t.a).abs(), t.b), ((x + t.a).abs(), t.b)])
            .collect();
        return Ok(quarter * rays_integral(&rays, t0, t1));
    }
    let f = |r: T| T::one() / complement_distance(domain, Complex::new(x, r));
    let opts = AdaptiveOptions::default();
    let mut total = T::zero();
    let mut a = t0;
    while a < t1 {
        let b = if a > T::zero() {
            a * T::two()
        } else if a < -T::one() {
            a * T::half()
        } else {
            T::one()
        };
        let b = b.min(t1);
        total = total + integrate_adaptive(&f, a, b, opts);
        a = b;
    }
    Ok(quarter * total)
}

/// Distance from `ir` to a downward ray with horizontal offset `d` and tip
/// height `b`.
fn ray_distance<T: Real>(d: T, b: T, r: T) -> T {
    if r <= b {
        d
    } else {
        d.hypot(r - b)
    }
}

/// `∫ dr / (r - b)^2 + d^2)^{1/2}` or `∫ dr / d`, depending on the regime.
fn ray_antiderivative<T: Real>(d: T, b: T, r0: T, r1: T) -> T {
    if r1 <= b {
        (r1 - r0) / d
    } else {
        ((r1 - b) / d).asinh() - ((r0 - b) / d).asinh()
    }
}

/// Exact `∫_{t0}^{t1} dr / min_k dist(ir, ray_k)` for rays `(d_k, b_k)`.
///
/// The minimum is piecewise a single ray's distance; the pieces end at tip
/// heights and at pairwise crossings, all of which are closed-form.
fn rays_integral<T: Real>(rays: &[(T, T)], t0: T, t1: T) -> T {
    let mut cuts = vec![t0, t1];
    let inside = |r: T| r > t0 && r < t1;
    for (i, &(dj, bj)) in rays.iter().enumerate() {
        if inside(bj) {
            cuts.push(bj);
        }
        for &(dk, bk) in &rays[i + 1..] {
            let mut cand = Vec::with_capacity(3);
            // flat piece of one against the sloped piece of the other
            if dk > dj {
                cand.push(bj + (dk * dk - dj * dj).sqrt());
            }
            if dj > dk {
                cand.push(bk + (dj * dj - dk * dk).sqrt());
            }
            // both sloped
            if bk != bj {
                cand.push(
                    (dk * dk - dj * dj + bk * bk - bj * bj) / (T::two() * (bk - bj)),
                );
            }
            cuts.extend(cand.into_iter().filter(|&r| inside(r)));
        }
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).expect("finite cut points"));
    cuts.dedup();
    let mut total = T::zero();
    for w in cuts.windows(2) {
        let (r0, r1) = (w[0], w[1]);
        let mid = (r0 + r1) * T::half();
        let &(d, b) = rays
            .iter()
            .min_by(|p, q| {
                ray_distance(p.0, p.1, mid)
                    .partial_cmp(&ray_distance(q.0, q.1, mid))
                    .expect("finite distances")
            })
            .expect("at least one ray");
        total = total + ray_antiderivative(d, b, r0, r1);
    }
    total
}
