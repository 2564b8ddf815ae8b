//! Rules on single normal cones: Gauss–Legendre on an arc, and on spherical
//! polygons a fan of triangles, each mapped from the square through a
//! collapsed (Duffy) coordinate and central projection.

use super::gauss::gauss_legendre_on;
use super::sphere::SphereQuadrature;
use crate::bodies::{det3, NormalCone, UnitVector};

/// Points per coordinate at a given level.
pub fn cone_order(level: u32) -> usize {
    8 + 8 * level as usize
}

pub fn cone_rule(cone: &NormalCone, level: u32) -> SphereQuadrature {
    let order = cone_order(level);
    match cone {
        NormalCone::Interval { start, end } => {
            let (theta, w) = gauss_legendre_on(order, *start, *end);
            let nodes = theta.iter().map(|&t| UnitVector::from_angle(t)).collect();
            SphereQuadrature::from_parts(2, level, nodes, w, (end - start) / order as f64)
        }
        NormalCone::SphericalPolygon { vertices } => {
            let (x, wx) = gauss_legendre_on(order, 0.0, 1.0);
            let mut nodes = Vec::new();
            let mut weights = Vec::new();
            let a = vertices[0].as_slice();
            for pair in vertices[1..].windows(2) {
                let (b, c) = (pair[0].as_slice(), pair[1].as_slice());
                let det = det3(a, b, c).abs();
                for (xi, wi) in x.iter().zip(&wx) {
                    for (yj, wj) in x.iter().zip(&wx) {
                        // p = a + x (b - a) + x y (c - b)
                        let p: Vec<f64> = (0..3)
                            .map(|k| a[k] + xi * (b[k] - a[k]) + xi * yj * (c[k] - b[k]))
                            .collect();
                        let r = p.iter().map(|v| v * v).sum::<f64>().sqrt();
                        weights.push(wi * wj * xi * det / (r * r * r));
                        nodes.push(UnitVector::from_unit_unchecked(p.iter().map(|v| v / r).collect()));
                    }
                }
            }
            SphereQuadrature::from_parts(3, level, nodes, weights, 1.0 / order as f64)
        }
    }
}
