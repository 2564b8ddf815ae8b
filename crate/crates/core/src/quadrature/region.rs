//! Subsets of the sphere with a node-wise membership test.

use std::f64::consts::PI;

use crate::bodies::{NormalCone, SmoothBody, UnitVector};

/// Predicate on points of space, pulled back to normals through the
/// reverse Gauss map.
#[derive(Debug, Clone, PartialEq)]
pub enum SpatialRegion {
    All,
    /// `{x : <normal, x> >= offset}`.
    HalfSpace { normal: Vec<f64>, offset: f64 },
    Ball { center: Vec<f64>, radius: f64 },
}

impl SpatialRegion {
    pub fn contains(&self, x: &[f64]) -> bool {
        match self {
            SpatialRegion::All => true,
            SpatialRegion::HalfSpace { normal, offset } => {
                normal.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() >= *offset
            }
            SpatialRegion::Ball { center, radius } => {
                center.iter().zip(x).map(|(c, y)| (c - y) * (c - y)).sum::<f64>() <= radius * radius
            }
        }
    }
}

#[derive(Debug, Clone)]
pub enum SphereRegion {
    Full,
    /// `{u : angle(u, center) <= angle}`.
    Cap { center: UnitVector, angle: f64 },
    /// Planar sector `start <= θ < end` (counter-clockwise, `end - start <= 2π`).
    Sector { start: f64, end: f64 },
    /// Convex spherical polygon, vertices counter-clockwise seen from outside.
    SphericalPolygon { vertices: Vec<UnitVector> },
    /// `{u : ξ̄_K(u) ∈ region}`.
    Pullback { body: SmoothBody, region: SpatialRegion },
    Complement(Box<SphereRegion>),
}

impl SphereRegion {
    pub fn contains(&self, u: &UnitVector) -> bool {
        match self {
            SphereRegion::Full => true,
            SphereRegion::Cap { center, angle } => center.dot(u.as_slice()) >= angle.cos(),
            SphereRegion::Sector { start, end } => {
                let s = u.as_slice();
                let offset = (s[1].atan2(s[0]) - start).rem_euclid(2.0 * PI);
                offset < end - start
            }
            SphereRegion::SphericalPolygon { vertices } => NormalCone::SphericalPolygon {
                vertices: vertices.clone(),
            }
            .contains(u),
            SphereRegion::Pullback { body, region } => region.contains(&body.boundary_point(u)),
            SphereRegion::Complement(inner) => !inner.contains(u),
        }
    }

    pub fn complement(self) -> SphereRegion {
        match self {
            SphereRegion::Complement(inner) => *inner,
            other => SphereRegion::Complement(Box::new(other)),
        }
    }
}

/// The normals whose boundary points lie in `region`.
pub fn boundary_region_pullback(body: &SmoothBody, region: SpatialRegion) -> SphereRegion {
    match region {
        SpatialRegion::All => SphereRegion::Full,
        region => SphereRegion::Pullback {
            body: body.clone(),
            region,
        },
    }
}
