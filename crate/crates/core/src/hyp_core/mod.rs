//! Hyperbolic metric, projections and automorphisms in the unit disc and the
//! right half-plane.

mod automorphism;
mod metric;
mod points;
mod projection;

pub use automorphism::DiscAutomorphism;
pub use metric::{
    cayley, cayley_inv, k_half, kappa, kappa_disc, kappa_half, omega, path_length, Space,
    LOG_BRANCH_CROSSOVER,
};
pub use points::{ComplexPoint, DiscPoint, HalfPlanePoint};
pub use projection::{
    dist_to_radius, dist_to_real_axis, project_to_radius, project_to_real_axis, RadialGeodesic,
};
