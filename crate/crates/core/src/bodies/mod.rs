//! Convex bodies with the origin in the interior: smooth bodies described by
//! support function and principal radii, and polytopes described by
//! vertices and normal cones.

mod polytope;
mod smooth;
mod spec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) use polytope::det3;
pub use polytope::{girard_area, Edge, Facet, NormalCone, Polytope};
pub use smooth::{
    normalized_symmetric, tangent_basis, GenericSupport, LocalData, ParallelBodyView,
    RadiusBounds, SmoothBody, SmoothKind, DEFAULT_FD_STEP, DEGENERATE_RADIUS,
};
pub use spec::BodySpec;

/// A point of `S^{n-1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct UnitVector(Vec<f64>);

impl UnitVector {
    /// Normalizes `v`; fails on zero or non-finite input.
    pub fn new(mut v: Vec<f64>) -> Result<Self> {
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidArgument(format!("cannot normalize {v:?}")));
        }
        for x in &mut v {
            *x /= norm;
        }
        Ok(Self(v))
    }

    /// Wraps components already known to have unit norm.
    pub fn from_unit_unchecked(v: Vec<f64>) -> Self {
        debug_assert!((v.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);
        Self(v)
    }

    /// `(cos θ, sin θ)`.
    pub fn from_angle(theta: f64) -> Self {
        Self(vec![theta.cos(), theta.sin()])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn dot(&self, x: &[f64]) -> f64 {
        self.0.iter().zip(x).map(|(a, b)| a * b).sum()
    }
}

impl TryFrom<Vec<f64>> for UnitVector {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<UnitVector> for Vec<f64> {
    fn from(u: UnitVector) -> Self {
        u.0
    }
}

/// Either kind of source body.
#[derive(Debug, Clone)]
pub enum Body {
    Smooth(SmoothBody),
    Polytope(Polytope),
}

impl Body {
    pub fn dim(&self) -> usize {
        match self {
            Body::Smooth(b) => b.dim(),
            Body::Polytope(p) => p.dim(),
        }
    }

    pub fn support(&self, u: &UnitVector) -> f64 {
        match self {
            Body::Smooth(b) => b.support(u),
            Body::Polytope(p) => p.support(u),
        }
    }

    pub fn beta(&self) -> f64 {
        match self {
            Body::Smooth(b) => b.beta(),
            Body::Polytope(p) => p.beta(),
        }
    }

    pub fn as_smooth(&self) -> Option<&SmoothBody> {
        match self {
            Body::Smooth(b) => Some(b),
            Body::Polytope(_) => None,
        }
    }

    pub fn as_polytope(&self) -> Option<&Polytope> {
        match self {
            Body::Polytope(p) => Some(p),
            Body::Smooth(_) => None,
        }
    }
}

impl From<SmoothBody> for Body {
    fn from(b: SmoothBody) -> Self {
        Body::Smooth(b)
    }
}

impl From<Polytope> for Body {
    fn from(p: Polytope) -> Self {
        Body::Polytope(p)
    }
}
