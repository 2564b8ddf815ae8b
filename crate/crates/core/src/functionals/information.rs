//! Rényi divergences and Hellinger integrals between the cone measures of a
//! body and of its polar, on the boundary measure space.

use super::exponent::PExponent;
use super::integrals::{checked_pow, lp_quermass};
use crate::bodies::SmoothBody;
use crate::error::{Error, Result};
use crate::quadrature::{SphereQuadrature, SphereRegion};

/// `α = p / (n + p)`; fails for `p = ±∞`, where `α = 1`.
pub fn renyi_order(p: PExponent, n: usize) -> Result<f64> {
    let alpha = p.exponents(n, 0.0)?.alpha;
    if p.is_infinite() || alpha == 1.0 {
        return Err(Error::AlphaOne);
    }
    Ok(alpha)
}

/// Weighted Rényi divergence `log(𝒲_{m,k}) / (α - 1)`.
pub fn renyi_divergence(
    body: &SmoothBody,
    m: u32,
    k: u32,
    p: PExponent,
    q: &SphereQuadrature,
) -> Result<f64> {
    let alpha = renyi_order(p, body.dim())?;
    let mass = lp_quermass(body, p, m, k, q)?;
    if !(mass > 0.0) {
        return Err(Error::NonPositiveMass { value: mass });
    }
    Ok(mass.ln() / (alpha - 1.0))
}

/// `∫_{∂K} p_K^α q_K^{1-α} dH^{n-1}` with `p_K = H_{n-1} / <x,ν>^n` and
/// `q_K = <x,ν>`, evaluated at the boundary point over each normal.
pub fn hellinger_integral(body: &SmoothBody, alpha: f64, q: &SphereQuadrature) -> Result<f64> {
    let n = body.dim() as i32;
    q.integrate(&SphereRegion::Full, |u| {
        let x = body.boundary_point(u);
        let pairing = u.dot(&x);
        let f = body.curvature_function(u)?;
        let gauss = 1.0 / f;
        let p_density = gauss / pairing.powi(n);
        let q_density = pairing;
        // dH^{n-1} = f dσ
        Ok(checked_pow(p_density, alpha, u)? * checked_pow(q_density, 1.0 - alpha, u)? * f)
    })
}
