//! Starlike-at-infinity model domains: validation, conformal maps onto the
//! right half-plane, Euclidean boundary distances and quasi-hyperbolic
//! lower bounds.

mod chain;
mod geometry;
mod quasihyp;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{HypError, Result};
use crate::hyp_core::{k_half, ComplexPoint};
use crate::scalar::Real;

pub use chain::{Ideal, MapLink, PlaneValue, RiemannMapChain};
pub use geometry::{delta, delta_pm, OmegaSign, Side};
pub use quasihyp::{quasihyp_lower, quasihyp_lower_at};

/// Raw domain parameters, as they appear in JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum DomainParams {
    Sector { p: [f64; 2], alpha: f64, beta: f64 },
    Strip { r: f64 },
    #[serde(rename = "halfplane")]
    HalfPlane { p: [f64; 2] },
    Koebe { p: [f64; 2] },
    Comb { teeth: Vec<[f64; 2]> },
}

impl DomainParams {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| HypError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("domain parameters serialize")
    }
}

/// One slit `{Re = ±a, Im <= b}` pair of a comb.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tooth<T> {
    pub a: T,
    pub b: T,
}

/// Validated domain variants.
#[derive(Debug, Clone, PartialEq)]
pub enum DomainKind<T> {
    /// `{Re w > Re p}`.
    HalfPlaneRight { p: ComplexPoint<T> },
    /// `{0 < Re z < r}`.
    Strip { r: T },
    /// `p + i V(alpha, beta)` with `V = {r e^{iθ} : -alpha < θ < beta}`.
    Sector {
        p: ComplexPoint<T>,
        alpha: T,
        beta: T,
    },
    /// The plane minus the downward vertical ray from `p`.
    Koebe { p: ComplexPoint<T> },
    /// The plane minus the slits `{Re = ±a_j, Im <= b_j}`.
    Comb { teeth: Vec<Tooth<T>> },
}

/// A validated domain. Construct with [`build_domain`] or the typed
/// constructors.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainSpec<T> {
    kind: DomainKind<T>,
}

fn point<T: Real>(p: [f64; 2]) -> Result<ComplexPoint<T>> {
    if !(p[0].is_finite() && p[1].is_finite()) {
        return Err(HypError::spec("vertex must be finite"));
    }
    Ok(Complex::new(T::lit(p[0]), T::lit(p[1])))
}

/// Validate raw parameters.
pub fn build_domain<T: Real>(params: &DomainParams) -> Result<DomainSpec<T>> {
    match params {
        DomainParams::HalfPlane { p } => Ok(DomainSpec::halfplane(point(*p)?)),
        DomainParams::Strip { r } => DomainSpec::strip(T::lit(*r)),
        DomainParams::Sector { p, alpha, beta } => {
            DomainSpec::sector(point(*p)?, T::lit(*alpha), T::lit(*beta))
        }
        DomainParams::Koebe { p } => Ok(DomainSpec::koebe(point(*p)?)),
        DomainParams::Comb { teeth } => DomainSpec::comb(
            teeth
                .iter()
                .map(|t| Tooth {
                    a: T::lit(t[0]),
                    b: T::lit(t[1]),
                })
                .collect(),
        ),
    }
}

impl<T: Real> DomainSpec<T> {
    pub fn halfplane(p: ComplexPoint<T>) -> Self {
        Self {
            kind: DomainKind::HalfPlaneRight { p },
        }
    }

    pub fn strip(r: T) -> Result<Self> {
        if !(r > T::zero()) || !r.is_finite() {
            return Err(HypError::spec(format!("strip width must be positive, got {r}")));
        }
        Ok(Self {
            kind: DomainKind::Strip { r },
        })
    }

    pub fn sector(p: ComplexPoint<T>, alpha: T, beta: T) -> Result<Self> {
        let ok = |x: T| x >= T::zero() && x <= T::PI();
        if !ok(alpha) || !ok(beta) {
            return Err(HypError::spec(format!(
                "sector angles must lie in [0, pi], got alpha={alpha}, beta={beta}"
            )));
        }
        if !(alpha + beta > T::zero()) {
            return Err(HypError::spec("sector needs alpha+beta>0 (alpha+beta>0 violated)"));
        }
        Ok(Self {
            kind: DomainKind::Sector { p, alpha, beta },
        })
    }

    pub fn koebe(p: ComplexPoint<T>) -> Self {
        Self {
            kind: DomainKind::Koebe { p },
        }
    }

    pub fn comb(teeth: Vec<Tooth<T>>) -> Result<Self> {
        if teeth.is_empty() {
            return Err(HypError::spec("comb needs at least one tooth"));
        }
        for t in &teeth {
            if !(t.a > T::zero()) || !t.a.is_finite() || !t.b.is_finite() {
                return Err(HypError::spec(format!(
                    "tooth offsets must be positive and finite, got a={}, b={}",
                    t.a, t.b
                )));
            }
        }
        for w in teeth.windows(2) {
            if !(w[1].a > w[0].a) {
                return Err(HypError::spec("comb offsets a_j must be strictly increasing"));
            }
            if !(w[1].b > w[0].b) {
                return Err(HypError::spec("comb heights b_j must be strictly increasing"));
            }
        }
        Ok(Self {
            kind: DomainKind::Comb { teeth },
        })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        build_domain(&DomainParams::from_json(s)?)
    }

    pub fn kind(&self) -> &DomainKind<T> {
        &self.kind
    }

    pub fn is_comb(&self) -> bool {
        matches!(self.kind, DomainKind::Comb { .. })
    }

    /// Short lowercase name of the variant.
    pub fn name(&self) -> &'static str {
        match self.kind {
            DomainKind::HalfPlaneRight { .. } => "halfplane",
            DomainKind::Strip { .. } => "strip",
            DomainKind::Sector { .. } => "sector",
            DomainKind::Koebe { .. } => "koebe",
            DomainKind::Comb { .. } => "comb",
        }
    }

    pub fn to_params(&self) -> DomainParams {
        let pt = |p: ComplexPoint<T>| [p.re.to_f64_lossy(), p.im.to_f64_lossy()];
        match &self.kind {
            DomainKind::HalfPlaneRight { p } => DomainParams::HalfPlane { p: pt(*p) },
            DomainKind::Strip { r } => DomainParams::Strip {
                r: r.to_f64_lossy(),
            },
            DomainKind::Sector { p, alpha, beta } => DomainParams::Sector {
                p: pt(*p),
                alpha: alpha.to_f64_lossy(),
                beta: beta.to_f64_lossy(),
            },
            DomainKind::Koebe { p } => DomainParams::Koebe { p: pt(*p) },
            DomainKind::Comb { teeth } => DomainParams::Comb {
                teeth: teeth
                    .iter()
                    .map(|t| [t.a.to_f64_lossy(), t.b.to_f64_lossy()])
                    .collect(),
            },
        }
    }

    /// Canonical interior point, sent to `1` by [`to_halfplane`].
    pub fn base_point(&self) -> ComplexPoint<T> {
        let i = Complex::new(T::zero(), T::one());
        match self.kind {
            DomainKind::HalfPlaneRight { p } => p + T::one(),
            DomainKind::Strip { r } => Complex::new(r * T::half(), T::zero()),
            DomainKind::Sector { p, alpha, beta } => {
                p + i * Complex::from_polar(T::one(), (beta - alpha) * T::half())
            }
            DomainKind::Koebe { p } => p + i,
            DomainKind::Comb { .. } => Complex::new(T::zero(), T::zero()),
        }
    }

    /// Largest height at which comb distances are trustworthy.
    pub fn comb_extent(&self) -> Option<T> {
        match &self.kind {
            DomainKind::Comb { teeth } => teeth.last().map(|t| t.b),
            _ => None,
        }
    }

    /// Membership test. For a comb only the materialized teeth are checked.
    pub fn contains(&self, w: ComplexPoint<T>) -> bool {
        if !(w.re.is_finite() && w.im.is_finite()) {
            return false;
        }
        match &self.kind {
            DomainKind::HalfPlaneRight { p } => w.re > p.re,
            DomainKind::Strip { r } => w.re > T::zero() && w.re < *r,
            DomainKind::Sector { .. } => geometry::complement_distance(self, w) > T::zero(),
            DomainKind::Koebe { p } => !(w.re == p.re && w.im <= p.im),
            DomainKind::Comb { teeth } => !teeth
                .iter()
                .any(|t| w.re.abs() == t.a && w.im <= t.b),
        }
    }
}

/// Closed-form conformal map of a non-comb domain onto the right half-plane,
/// sending [`DomainSpec::base_point`] to `1`.
pub fn to_halfplane<T: Real>(domain: &DomainSpec<T>) -> Result<RiemannMapChain<T>> {
    let i = Complex::new(T::zero(), T::one());
    let one = Complex::new(T::one(), T::zero());
    let links = match domain.kind {
        DomainKind::HalfPlaneRight { p } => vec![MapLink::Affine { a: one, b: -p }],
        DomainKind::Strip { r } => vec![MapLink::ExpScale {
            c: i * (T::PI() / r),
        }],
        DomainKind::Sector { p, alpha, beta } => {
            let a = -i * Complex::from_polar(T::one(), -(beta - alpha) * T::half());
            let half_width = (alpha + beta) * T::half();
            vec![
                MapLink::Affine { a, b: -a * p },
                MapLink::power(T::PI() / (alpha + beta), -half_width, half_width)?,
            ]
        }
        DomainKind::Koebe { p } => vec![
            MapLink::Affine { a: -i, b: i * p },
            MapLink::power(T::half(), -T::PI(), T::PI())?,
        ],
        DomainKind::Comb { .. } => {
            return Err(HypError::unsupported(
                "comb domains have no closed-form map; use quasihyp_lower",
            ))
        }
    };
    Ok(RiemannMapChain::new(links))
}

/// Hyperbolic distance in the domain, via the map onto the half-plane.
pub fn k_domain<T: Real>(
    domain: &DomainSpec<T>,
    w1: ComplexPoint<T>,
    w2: ComplexPoint<T>,
) -> Result<T> {
    let chain = to_halfplane(domain)?;
    for w in [w1, w2] {
        if !domain.contains(w) {
            return Err(HypError::domain(format!("{w} is not in the {} domain", domain.name())));
        }
    }
    if w1 == w2 {
        return Ok(T::zero());
    }
    let a = chain.forward(w1)?.to_halfplane()?;
    let b = chain.forward(w2)?.to_halfplane()?;
    Ok(k_half(a, b))
}
