//! Product rules on `S^{n-1}` and the integration entry points.

use std::f64::consts::PI;

use rayon::prelude::*;

use super::gauss::gauss_legendre;
use super::region::SphereRegion;
use super::sum::{deterministic_sum, deterministic_sum_many};
use crate::bodies::UnitVector;
use crate::error::{Error, Result};

/// Refuse to build rules with more nodes than this.
const MAX_NODES: usize = 1 << 24;

/// Intervals in polar angle with their nodes and weights (weights include
/// the `sin^power` Jacobian).
struct AngleRule {
    angles: Vec<f64>,
    weights: Vec<f64>,
    covering: f64,
}

/// Rule for `∫_0^π g(θ) sin^power θ dθ`, exact for polynomials in `cos θ`
/// of degree below `2 points` (power 1, 3) or `2 points` (power 2).
fn polar_rule(points: usize, power: u32) -> AngleRule {
    let (angles, weights): (Vec<f64>, Vec<f64>) = match power {
        2 => {
            // Gauss–Chebyshev of the second kind in cos θ
            let step = PI / (points as f64 + 1.0);
            (1..=points)
                .map(|i| {
                    let t = i as f64 * step;
                    (t, step * t.sin() * t.sin())
                })
                .unzip()
        }
        _ => {
            let (x, w) = gauss_legendre(points);
            x.iter()
                .zip(&w)
                .rev()
                .map(|(c, wi)| (c.acos(), wi * (1.0 - c * c).powi((power as i32 - 1) / 2)))
                .unzip()
        }
    };
    let mut covering = angles[0].max(PI - angles[angles.len() - 1]);
    for pair in angles.windows(2) {
        covering = covering.max(0.5 * (pair[1] - pair[0]));
    }
    AngleRule {
        angles,
        weights,
        covering,
    }
}

/// A deterministic positive-weight rule on the sphere or on a piece of it.
#[derive(Debug, Clone)]
pub struct SphereQuadrature {
    dim: usize,
    level: u32,
    nodes: Vec<UnitVector>,
    weights: Vec<f64>,
    mesh_width: f64,
}

impl SphereQuadrature {
    /// Full-sphere rule for `2 <= n <= 5`; node count doubles per level in
    /// each coordinate.
    ///
    /// n = 2: uniform nodes at half-offset angles. n >= 3: the last angle is
    /// uniform azimuth; each polar angle with `sin^k θ` Jacobian uses a Gauss
    /// rule in `cos θ` for the weight `(1 - x²)^{(k-1)/2}`.
    pub fn build(dim: usize, level: u32) -> Result<Self> {
        if !(2..=5).contains(&dim) {
            return Err(Error::UnsupportedDimension {
                dim,
                reason: "sphere quadrature is available for 2 <= n <= 5",
            });
        }
        if level == 0 {
            return Err(Error::InvalidArgument("quadrature level must be at least 1".into()));
        }
        let (polar_points, azimuth_points) = match dim {
            2 => (0, 1usize << (level + 3).min(40)),
            3 => (1usize << (level + 1).min(40), 1usize << (level + 2).min(40)),
            _ => (1usize << level.min(40), 1usize << (level + 1).min(40)),
        };
        let polar_count = dim - 2;
        let total = azimuth_points.saturating_mul(polar_points.saturating_pow(polar_count as u32));
        if total > MAX_NODES {
            return Err(Error::InvalidArgument(format!(
                "quadrature level {level} in dimension {dim} needs {total} nodes (limit {MAX_NODES})"
            )));
        }

        let rules: Vec<AngleRule> = (0..polar_count)
            .map(|i| polar_rule(polar_points, (dim - 2 - i) as u32))
            .collect();
        let dphi = 2.0 * PI / azimuth_points as f64;
        let azimuths: Vec<f64> = (0..azimuth_points).map(|j| (j as f64 + 0.5) * dphi).collect();

        let mut nodes = Vec::with_capacity(total);
        let mut weights = Vec::with_capacity(total);
        for flat in 0..polar_points.pow(polar_count as u32) {
            // digits of `flat`, first polar angle slowest
            let mut rest = flat;
            let mut idx = vec![0usize; polar_count];
            for slot in idx.iter_mut().rev() {
                *slot = rest % polar_points;
                rest /= polar_points;
            }
            let mut prefix = Vec::with_capacity(dim);
            let mut sin_prod = 1.0;
            let mut w = dphi;
            for (r, &i) in rules.iter().zip(&idx) {
                let a = r.angles[i];
                prefix.push(sin_prod * a.cos());
                sin_prod *= a.sin();
                w *= r.weights[i];
            }
            for &phi in &azimuths {
                let mut u = prefix.clone();
                u.push(sin_prod * phi.cos());
                u.push(sin_prod * phi.sin());
                nodes.push(UnitVector::from_unit_unchecked(u));
                weights.push(w);
            }
        }

        let half_dphi = 0.5 * dphi;
        let mesh_width = (rules.iter().map(|r| r.covering * r.covering).sum::<f64>()
            + half_dphi * half_dphi)
            .sqrt();
        Ok(Self {
            dim,
            level,
            nodes,
            weights,
            mesh_width,
        })
    }

    /// Rule assembled from explicit nodes and weights (used for cone rules).
    pub fn from_parts(
        dim: usize,
        level: u32,
        nodes: Vec<UnitVector>,
        weights: Vec<f64>,
        mesh_width: f64,
    ) -> Self {
        assert_eq!(nodes.len(), weights.len());
        Self {
            dim,
            level,
            nodes,
            weights,
            mesh_width,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[UnitVector] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Upper estimate of the geodesic distance from any point to the nearest node.
    pub fn mesh_width(&self) -> f64 {
        self.mesh_width
    }

    /// Node-wise membership of `region`.
    pub fn mask(&self, region: &SphereRegion) -> Vec<bool> {
        if matches!(region, SphereRegion::Full) {
            return vec![true; self.nodes.len()];
        }
        self.nodes.par_iter().map(|u| region.contains(u)).collect()
    }

    /// `Σ_{u_i ∈ region} w_i g(u_i)`.
    pub fn integrate<F>(&self, region: &SphereRegion, g: F) -> Result<f64>
    where
        F: Fn(&UnitVector) -> Result<f64> + Sync,
    {
        let mask = self.mask(region);
        self.integrate_masked(&mask, g)
    }

    /// As [`integrate`](Self::integrate) with a precomputed mask.
    pub fn integrate_masked<F>(&self, mask: &[bool], g: F) -> Result<f64>
    where
        F: Fn(&UnitVector) -> Result<f64> + Sync,
    {
        deterministic_sum(self.nodes.len(), |i| {
            if !mask[i] {
                return Ok(0.0);
            }
            let value = g(&self.nodes[i])?;
            if !value.is_finite() {
                return Err(Error::NonFiniteIntegrand {
                    index: i,
                    direction: self.nodes[i].as_slice().to_vec(),
                    value,
                });
            }
            Ok(self.weights[i] * value)
        })
    }

    /// Integrates `width` functions at once; `g(u, out)` fills `out`.
    pub fn integrate_many<F>(&self, region: &SphereRegion, width: usize, g: F) -> Result<Vec<f64>>
    where
        F: Fn(&UnitVector, &mut [f64]) -> Result<()> + Sync,
    {
        let mask = self.mask(region);
        self.integrate_many_masked(&mask, width, g)
    }

    pub fn integrate_many_masked<F>(&self, mask: &[bool], width: usize, g: F) -> Result<Vec<f64>>
    where
        F: Fn(&UnitVector, &mut [f64]) -> Result<()> + Sync,
    {
        deterministic_sum_many(self.nodes.len(), width, |i, out| {
            if !mask[i] {
                return Ok(());
            }
            g(&self.nodes[i], out)?;
            let w = self.weights[i];
            for v in out.iter_mut() {
                if !v.is_finite() {
                    return Err(Error::NonFiniteIntegrand {
                        index: i,
                        direction: self.nodes[i].as_slice().to_vec(),
                        value: *v,
                    });
                }
                *v *= w;
            }
            Ok(())
        })
    }

    /// Largest value of `g` over member nodes, with the first node attaining it.
    pub fn max_over<F>(&self, region: &SphereRegion, g: F) -> Result<(f64, usize)>
    where
        F: Fn(&UnitVector) -> Result<f64> + Sync,
    {
        let mask = self.mask(region);
        let values: Vec<f64> = (0..self.nodes.len())
            .into_par_iter()
            .map(|i| {
                if !mask[i] {
                    return Ok(f64::NEG_INFINITY);
                }
                let v = g(&self.nodes[i])?;
                if v.is_nan() {
                    return Err(Error::NonFiniteIntegrand {
                        index: i,
                        direction: self.nodes[i].as_slice().to_vec(),
                        value: v,
                    });
                }
                Ok(v)
            })
            .collect::<Result<_>>()?;
        let mut best = (f64::NEG_INFINITY, usize::MAX);
        for (i, &v) in values.iter().enumerate() {
            if v > best.0 {
                best = (v, i);
            }
        }
        if best.1 == usize::MAX {
            return Err(Error::InvalidArgument("region contains no quadrature node".into()));
        }
        Ok(best)
    }

    /// `Σ_{u_i ∈ region} w_i`.
    pub fn region_measure(&self, region: &SphereRegion) -> f64 {
        self.integrate(region, |_| Ok(1.0)).expect("constant integrand is finite")
    }
}

/// Surface area of `S^{n-1}`, `n ω_n = 2 π^{n/2} / Γ(n/2)`.
pub fn sphere_area(n: usize) -> f64 {
    n as f64 * unit_ball_volume(n)
}

/// `ω_n = π^{n/2} / Γ(n/2 + 1)`, via the two-step recurrence `ω_n = 2π/n ω_{n-2}`.
pub fn unit_ball_volume(n: usize) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * PI / n as f64 * unit_ball_volume(n - 2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_volumes() {
        assert!((unit_ball_volume(2) - PI).abs() < 1e-15);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-15);
        assert!((unit_ball_volume(4) - PI * PI / 2.0).abs() < 1e-14);
        assert!((sphere_area(5) - 8.0 * PI * PI / 3.0).abs() < 1e-13);
    }

    #[test]
    fn total_measure() {
        for level in 1..=4 {
            let q2 = SphereQuadrature::build(2, level).unwrap();
            assert!((q2.weights().iter().sum::<f64>() - 2.0 * PI).abs() < 1e-12);
            let q3 = SphereQuadrature::build(3, level).unwrap();
            assert!((q3.weights().iter().sum::<f64>() - 4.0 * PI).abs() < 1e-10);
        }
        for (n, level) in [(4, 3), (5, 3)] {
            let q = SphereQuadrature::build(n, level).unwrap();
            let total = q.region_measure(&SphereRegion::Full);
            assert!((total - sphere_area(n)).abs() < 1e-7, "n={n}: {total}");
            assert!(q.weights().iter().all(|w| *w > 0.0));
        }
    }

    #[test]
    fn nodes_are_unit() {
        for n in 2..=5 {
            let q = SphereQuadrature::build(n, 2).unwrap();
            for u in q.nodes() {
                let s: f64 = u.as_slice().iter().map(|x| x * x).sum();
                assert!((s.sqrt() - 1.0).abs() < 1e-14);
                assert_eq!(u.dim(), n);
            }
        }
    }

    #[test]
    fn second_moments() {
        for n in 3..=5 {
            let q = SphereQuadrature::build(n, 3).unwrap();
            for axis in 0..n {
                let m = q
                    .integrate(&SphereRegion::Full, |u| Ok(u.as_slice()[axis].powi(2)))
                    .unwrap();
                assert!((m - sphere_area(n) / n as f64).abs() < 1e-9, "n={n} axis={axis}");
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            SphereQuadrature::build(6, 2),
            Err(Error::UnsupportedDimension { dim: 6, .. })
        ));
        assert!(SphereQuadrature::build(3, 0).is_err());
        assert!(SphereQuadrature::build(5, 20).is_err());
    }

    #[test]
    fn reports_non_finite_node() {
        let q = SphereQuadrature::build(2, 1).unwrap();
        let err = q
            .integrate(&SphereRegion::Full, |u| Ok(if u.as_slice()[0] > 0.98 { f64::NAN } else { 1.0 }))
            .unwrap_err();
        match err {
            Error::NonFiniteIntegrand { index, direction, .. } => {
                assert_eq!(direction, q.nodes()[index].as_slice());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn mesh_width_shrinks() {
        let a = SphereQuadrature::build(3, 2).unwrap().mesh_width();
        let b = SphereQuadrature::build(3, 3).unwrap().mesh_width();
        assert!(b < 0.6 * a);
        let q = SphereQuadrature::build(2, 1).unwrap();
        assert!((q.mesh_width() - PI / 16.0).abs() < 1e-15);
    }

    #[test]
    fn max_over_finds_pole() {
        let q = SphereQuadrature::build(3, 3).unwrap();
        let (v, i) = q.max_over(&SphereRegion::Full, |u| Ok(u.as_slice()[2])).unwrap();
        assert_eq!(q.nodes()[i].as_slice()[2], v);
        assert!(v > 0.99);
    }
}
