//! Deterministic integration over `S^{n-1}` and its subsets.

mod cones;
mod gauss;
mod region;
mod sphere;
mod sum;

pub use cones::{cone_order, cone_rule};
pub use gauss::{gauss_legendre, gauss_legendre_on};
pub use region::{boundary_region_pullback, SpatialRegion, SphereRegion};
pub use sphere::{sphere_area, unit_ball_volume, SphereQuadrature};
pub use sum::{deterministic_sum, deterministic_sum_many, neumaier_sum, Neumaier, CHUNK};
