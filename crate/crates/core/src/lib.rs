//! Hyperbolic speeds of orbits of non-elliptic semigroups of holomorphic
//! self-maps of the unit disc.
//!
//! Numerical routines are generic over [`Real`]; the aliases below fix the
//! scalar to `f64`.

pub mod comb_builder;
pub mod domains;
pub mod error;
pub mod experiments;
pub mod hyp_core;
pub mod quadrature;
pub mod scalar;
pub mod semigroups;
pub mod speeds;
pub mod verify;

pub use error::{HypError, Result};
pub use scalar::Real;

pub type DiscPoint64 = hyp_core::DiscPoint<f64>;
pub type HalfPlanePoint64 = hyp_core::HalfPlanePoint<f64>;
pub type RadialGeodesic64 = hyp_core::RadialGeodesic<f64>;
pub type DiscAutomorphism64 = hyp_core::DiscAutomorphism<f64>;
pub type DomainSpec64 = domains::DomainSpec<f64>;
pub type RiemannMapChain64 = domains::RiemannMapChain<f64>;
pub type KoenigsSemigroup64 = semigroups::KoenigsSemigroup<f64>;
pub type SpeedSample64 = speeds::SpeedSample<f64>;
pub type AsymptoticFit64 = speeds::AsymptoticFit<f64>;
pub type CombConstruction64 = comb_builder::CombConstruction<f64>;
