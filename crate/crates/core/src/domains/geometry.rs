//! Euclidean distance to the complement of a model domain.
//!
//! Every complement is a finite union of closed convex pieces, each an
//! intersection of half-planes. The distance to a piece is attained at the
//! query point itself, at the projection onto one of its lines, or at the
//! intersection of two of its lines, so a small candidate search is exact.

use num_complex::Complex;

use super::{DomainKind, DomainSpec};
use crate::error::{HypError, Result};
use crate::hyp_core::ComplexPoint;
use crate::scalar::Real;

/// Which enlargement of the domain: `Ω ∪ {Re w > Re ref}` or
/// `Ω ∪ {Re w < Re ref}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaSign<T> {
    pub side: Side,
    pub reference: ComplexPoint<T>,
}

impl<T: Real> OmegaSign<T> {
    pub fn plus(reference: ComplexPoint<T>) -> Self {
        Self {
            side: Side::Plus,
            reference,
        }
    }

    pub fn minus(reference: ComplexPoint<T>) -> Self {
        Self {
            side: Side::Minus,
            reference,
        }
    }

    fn clip(&self) -> HalfSpace<T> {
        let x = self.reference.re;
        match self.side {
            // complement of Ω⁺ lives in {Re <= Re ref}
            Side::Plus => HalfSpace::new(Complex::new(T::one(), T::zero()), x),
            Side::Minus => HalfSpace::new(Complex::new(-T::one(), T::zero()), -x),
        }
    }
}

/// `{x : <n, x> <= c}` with `|n| = 1`.
#[derive(Debug, Clone, Copy)]
struct HalfSpace<T> {
    n: Complex<T>,
    c: T,
}

fn dot<T: Real>(a: Complex<T>, b: Complex<T>) -> T {
    a.re * b.re + a.im * b.im
}

fn cross<T: Real>(a: Complex<T>, b: Complex<T>) -> T {
    a.re * b.im - a.im * b.re
}

impl<T: Real> HalfSpace<T> {
    fn new(n: Complex<T>, c: T) -> Self {
        Self { n, c }
    }

    /// `{x : <n, x - p> <= 0}`.
    fn through(p: Complex<T>, n: Complex<T>) -> Self {
        Self { n, c: dot(n, p) }
    }

    fn excess(&self, x: Complex<T>) -> T {
        dot(self.n, x) - self.c
    }
}

type Piece<T> = Vec<HalfSpace<T>>;

fn feasible<T: Real>(piece: &[HalfSpace<T>], x: Complex<T>) -> bool {
    piece.iter().all(|h| {
        let tol = T::lit(1e-12) * (T::one() + h.c.abs() + x.norm());
        h.excess(x) <= tol
    })
}

fn piece_distance<T: Real>(piece: &[HalfSpace<T>], q: Complex<T>) -> T {
    if piece.iter().all(|h| h.excess(q) <= T::zero()) {
        return T::zero();
    }
    let mut best = T::infinity();
    for h in piece {
        let x = q - h.n * h.excess(q);
        if feasible(piece, x) {
            best = best.min((q - x).norm());
        }
    }
    for (i, h1) in piece.iter().enumerate() {
        for h2 in &piece[i + 1..] {
            let det = cross(h1.n, h2.n);
            if det.abs() <= T::lit(1e-14) {
                continue;
            }
            let x = Complex::new(
                (h1.c * h2.n.im - h2.c * h1.n.im) / det,
                (h1.n.re * h2.c - h2.n.re * h1.c) / det,
            );
            if feasible(piece, x) {
                best = best.min((q - x).norm());
            }
        }
    }
    best
}

/// Closed cone at `apex` spanned by directions with argument in
/// `[start, start + width]`, `0 <= width <= pi`.
fn convex_cone<T: Real>(apex: Complex<T>, start: T, width: T) -> Piece<T> {
    let e1 = Complex::from_polar(T::one(), start);
    let e2 = Complex::from_polar(T::one(), start + width);
    let bis = Complex::from_polar(T::one(), start + width * T::half());
    vec![
        // cross(e1, x - apex) >= 0
        HalfSpace::through(apex, Complex::new(e1.im, -e1.re)),
        // cross(x - apex, e2) >= 0
        HalfSpace::through(apex, Complex::new(-e2.im, e2.re)),
        HalfSpace::through(apex, -bis),
    ]
}

/// The downward vertical ray from `tip`.
fn down_ray<T: Real>(tip: Complex<T>) -> Piece<T> {
    vec![
        HalfSpace::new(Complex::new(T::one(), T::zero()), tip.re),
        HalfSpace::new(Complex::new(-T::one(), T::zero()), -tip.re),
        HalfSpace::new(Complex::new(T::zero(), T::one()), tip.im),
    ]
}

fn complement_pieces<T: Real>(domain: &DomainSpec<T>) -> Vec<Piece<T>> {
    let one = T::one();
    match domain.kind() {
        DomainKind::HalfPlaneRight { p } => {
            vec![vec![HalfSpace::new(Complex::new(one, T::zero()), p.re)]]
        }
        DomainKind::Strip { r } => vec![
            vec![HalfSpace::new(Complex::new(one, T::zero()), T::zero())],
            vec![HalfSpace::new(Complex::new(-one, T::zero()), -*r)],
        ],
        DomainKind::Sector { p, alpha, beta } => {
            // the domain is arg(w - p) in (pi/2 - alpha, pi/2 + beta)
            let start = T::FRAC_PI_2() + *beta;
            let width = T::two() * T::PI() - *alpha - *beta;
            if width <= T::PI() {
                vec![convex_cone(*p, start, width)]
            } else {
                let h = width * T::half();
                vec![convex_cone(*p, start, h), convex_cone(*p, start + h, h)]
            }
        }
        DomainKind::Koebe { p } => vec![down_ray(*p)],
        DomainKind::Comb { teeth } => teeth
            .iter()
            .flat_map(|t| {
                [
                    down_ray(Complex::new(t.a, t.b)),
                    down_ray(Complex::new(-t.a, t.b)),
                ]
            })
            .collect(),
    }
}

/// Distance to the complement without membership checks (0 outside).
pub(crate) fn complement_distance<T: Real>(domain: &DomainSpec<T>, q: ComplexPoint<T>) -> T {
    complement_pieces(domain)
        .iter()
        .map(|p| piece_distance(p, q))
        .fold(T::infinity(), T::min)
}

fn comb_guard<T: Real>(domain: &DomainSpec<T>, q: ComplexPoint<T>) -> Result<()> {
    if let DomainKind::Comb { teeth } = domain.kind() {
        let last = teeth.last().expect("validated comb has teeth");
        if q.im > last.b || q.re.abs() >= last.a {
            return Err(HypError::domain(format!(
                "{q} lies beyond the materialized comb (|Re| < {}, Im <= {})",
                last.a, last.b
            )));
        }
    }
    Ok(())
}

/// Euclidean distance from `q` to the complement of the domain.
pub fn delta<T: Real>(domain: &DomainSpec<T>, q: ComplexPoint<T>) -> Result<T> {
    comb_guard(domain, q)?;
    let d = complement_distance(domain, q);
    if !(d > T::zero()) {
        return Err(HypError::domain(format!("{q} is not in the {} domain", domain.name())));
    }
    Ok(d)
}

/// Euclidean distance from `q` to the complement of `Ω ∪ {±(Re w - Re ref) > 0}`.
/// Returns `+∞` when the enlarged set is the whole plane.
pub fn delta_pm<T: Real>(
    domain: &DomainSpec<T>,
    sign: OmegaSign<T>,
    q: ComplexPoint<T>,
) -> Result<T> {
    comb_guard(domain, q)?;
    let clip = sign.clip();
    let d = complement_pieces(domain)
        .into_iter()
        .map(|mut p| {
            p.push(clip);
            piece_distance(&p, q)
        })
        .fold(T::infinity(), T::min);
    if !(d > T::zero()) {
        return Err(HypError::domain(format!(
            "{q} is not in the enlarged {} domain",
            domain.name()
        )));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::super::Tooth;
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn simple_examples() {
        let h = DomainSpec::halfplane(c(0.0, 0.0));
        assert_eq!(delta(&h, c(1.0, 0.0)).unwrap(), 1.0);
        assert!(delta(&h, c(-1.0, 0.0)).is_err());
        let k = DomainSpec::koebe(c(0.0, 0.0));
        for t in [0.1, 1.0, 1e6] {
            assert!((delta(&k, c(0.0, t)).unwrap() - t).abs() < 1e-12 * t);
        }
        assert!((delta(&k, c(3.0, -2.0)).unwrap() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn pm_examples() {
        let h = DomainSpec::halfplane(c(0.0, 0.0));
        assert_eq!(
            delta_pm(&h, OmegaSign::minus(c(1.0, 0.0)), c(-5.0, 2.0)).unwrap(),
            f64::INFINITY
        );
        for t in [0.0, 3.0, -7.0] {
            let d = delta_pm(&h, OmegaSign::plus(c(1.0, 0.0)), c(1.0, t)).unwrap();
            assert!((d - 1.0).abs() < 1e-15);
        }
        let k = DomainSpec::koebe(c(0.0, 0.0));
        for t in [0.5, 4.0] {
            let p = delta_pm(&k, OmegaSign::plus(c(0.0, 1.0)), c(0.0, t)).unwrap();
            let m = delta_pm(&k, OmegaSign::minus(c(0.0, 1.0)), c(0.0, t)).unwrap();
            assert!((p - t).abs() < 1e-14 && (m - t).abs() < 1e-14);
        }
    }

    #[test]
    fn sector_matches_brute_force() {
        let ds = [
            (c(0.0, 0.0), PI / 4.0, PI / 4.0),
            (c(1.0, -1.0), 0.3, 2.5),
            (c(0.0, 0.0), PI, 0.0),
            (c(0.0, 2.0), PI, PI),
            (c(0.5, 0.0), 0.0, 0.2),
        ];
        let qs = [c(0.1, 3.0), c(2.0, 1.0), c(-3.0, 0.5), c(0.0, 10.0), c(1.2, 0.3)];
        for (p, a, b) in ds {
            let d = DomainSpec::sector(p, a, b).unwrap();
            for q in qs {
                if !d.contains(q) {
                    continue;
                }
                // brute force over the two boundary rays
                let mut best = f64::INFINITY;
                for ang in [PI / 2.0 - a, PI / 2.0 + b] {
                    let e = Complex::from_polar(1.0, ang);
                    for k in 0..200_000 {
                        let s = k as f64 * 1e-4;
                        best = best.min((q - (p + e * s)).norm());
                    }
                }
                let got = delta(&d, q).unwrap();
                assert!(got <= best + 1e-12 && got >= best - 1e-4, "{p} {a} {b} {q}");
            }
        }
    }

    #[test]
    fn comb_plateau_and_guard() {
        let d = DomainSpec::comb(vec![
            Tooth { a: 1.0, b: 1.0 },
            Tooth { a: 2.0, b: 10.0 },
            Tooth { a: 3.0, b: 50.0 },
        ])
        .unwrap();
        let x1 = 1.0 + (4.0f64 - 1.0).sqrt();
        for r in [x1, 5.0, 10.0] {
            assert!((delta(&d, c(0.0, r)).unwrap() - 2.0).abs() < 1e-12, "{r}");
        }
        assert!((delta(&d, c(0.0, 1.5)).unwrap() - 1.25f64.sqrt()).abs() < 1e-12);
        assert!(delta(&d, c(0.0, 51.0)).is_err());
        assert!(delta(&d, c(1.0, 0.0)).is_err());
    }
}
