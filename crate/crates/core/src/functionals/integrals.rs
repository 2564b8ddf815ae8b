//! Curvature integrals over the sphere of normals.
//!
//! Every boundary integral is pulled back to `S^{n-1}` through the reverse
//! Gauss map, where `dH^{n-1} = f_K dσ` and `<x, ν(x)> = h_K(u)`.

use serde::Serialize;

use super::exponent::PExponent;
use crate::algebra::a_coeff;
use crate::bodies::{SmoothBody, UnitVector};
use crate::error::{Error, Result};
use crate::quadrature::{boundary_region_pullback, SpatialRegion, SphereQuadrature, SphereRegion};

/// Positive node factors below this are reported as underflow.
pub const UNDERFLOW_LIMIT: f64 = 1e-300;

pub(crate) fn checked_pow(base: f64, exponent: f64, u: &UnitVector) -> Result<f64> {
    if exponent == 0.0 {
        return Ok(1.0);
    }
    let v = base.powf(exponent);
    if v < UNDERFLOW_LIMIT {
        return Err(Error::Underflow {
            value: v,
            direction: u.as_slice().to_vec(),
        });
    }
    Ok(v)
}

/// `as_p(K) = ∫ f^{n/(n+p)} h^{n(1-p)/(n+p)} dσ`.
pub fn lp_asa(body: &SmoothBody, p: PExponent, q: &SphereQuadrature) -> Result<f64> {
    mixed_asa(body, p, 0.0, q)
}

/// `as_{p,s}(K) = ∫ (f h^{1-p})^{(n-s)/(n+p)} dσ`.
pub fn mixed_asa(body: &SmoothBody, p: PExponent, s: f64, q: &SphereQuadrature) -> Result<f64> {
    mixed_asa_on(body, p, s, &SphereRegion::Full, q)
}

pub fn mixed_asa_on(
    body: &SmoothBody,
    p: PExponent,
    s: f64,
    region: &SphereRegion,
    q: &SphereQuadrature,
) -> Result<f64> {
    let mask = q.mask(region);
    mixed_asa_masked(body, p, s, &mask, q)
}

pub(crate) fn mixed_asa_masked(
    body: &SmoothBody,
    p: PExponent,
    s: f64,
    mask: &[bool],
    q: &SphereQuadrature,
) -> Result<f64> {
    let e = p.exponents(body.dim(), s)?;
    q.integrate_masked(mask, |u| {
        let h = body.support(u);
        let curv = if e.curvature == 0.0 {
            1.0
        } else {
            checked_pow(body.curvature_function(u)?, e.curvature, u)?
        };
        Ok(curv * checked_pow(h, e.support, u)?)
    })
}

/// Value of `max_u f^{1/2} h^{(n+1)/2}` with the node attaining it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeMaximum {
    pub value: f64,
    pub index: usize,
    pub direction: UnitVector,
}

/// `as_{-n}(K)` as the largest node value of `f^{1/2} h^{(n+1)/2}`.
pub fn l_neg_n_asa(body: &SmoothBody, q: &SphereQuadrature) -> Result<NodeMaximum> {
    let half_up = (body.dim() as f64 + 1.0) / 2.0;
    let (value, index) = q.max_over(&SphereRegion::Full, |u| {
        Ok(body.curvature_function(u)?.sqrt() * body.support(u).powf(half_up))
    })?;
    Ok(NodeMaximum {
        value,
        index,
        direction: q.nodes()[index].clone(),
    })
}

/// `𝒲_{m,k}(K) = ∫ f^{n/(n+p)} h^{n(1-p)/(n+p) - k + m} A^m_p dσ`.
pub fn lp_quermass(
    body: &SmoothBody,
    p: PExponent,
    m: u32,
    k: u32,
    q: &SphereQuadrature,
) -> Result<f64> {
    mixed_quermass(body, p, 0.0, m, k, &SphereRegion::Full, q)
}

/// The `(p, s)` coefficient integral restricted to `region`:
/// `∫_ω f^{(n-s)/(n+p)} h^{(n-s)(1-p)/(n+p) - k + m} A^m_{p,s} dσ`.
pub fn mixed_quermass(
    body: &SmoothBody,
    p: PExponent,
    s: f64,
    m: u32,
    k: u32,
    region: &SphereRegion,
    q: &SphereQuadrature,
) -> Result<f64> {
    if k < m {
        return Err(Error::InvalidArgument(format!("need k >= m, got m = {m}, k = {k}")));
    }
    let e = p.exponents(body.dim(), s)?;
    let shift = m as f64 - k as f64;
    q.integrate(region, |u| {
        let local = body.local_data(u)?;
        let a = a_coeff(p.value(), s, m, &local.h_curvatures())?;
        if a == 0.0 {
            return Ok(0.0);
        }
        let curv = checked_pow(local.curvature_function(), e.curvature, u)?;
        Ok(curv * checked_pow(local.support, e.support + shift, u)? * a)
    })
}

/// Sphere-side measure `S_{m,k}(K, ω)`.
pub fn area_measure(
    body: &SmoothBody,
    p: PExponent,
    m: u32,
    k: u32,
    omega: &SphereRegion,
    q: &SphereQuadrature,
) -> Result<f64> {
    mixed_quermass(body, p, 0.0, m, k, omega, q)
}

/// Boundary-side measure `C_{m,k}(K, B)`, evaluated on the normals whose
/// boundary points lie in `region`.
pub fn curvature_measure(
    body: &SmoothBody,
    p: PExponent,
    m: u32,
    k: u32,
    region: &SpatialRegion,
    q: &SphereQuadrature,
) -> Result<f64> {
    let omega = boundary_region_pullback(body, region.clone());
    area_measure(body, p, m, k, &omega, q)
}

/// Classical quermassintegral `W_i`; `i = 0` is the volume.
pub fn classical_quermass(body: &SmoothBody, i: usize, q: &SphereQuadrature) -> Result<f64> {
    let n = body.dim();
    if i > n {
        return Err(Error::InvalidArgument(format!("quermassintegral index {i} exceeds n = {n}")));
    }
    let total = q.integrate(&SphereRegion::Full, |u| {
        let local = body.local_data(u)?;
        Ok(if i == 0 {
            local.support * local.curvature_function()
        } else {
            local.h_curvature(i - 1) * local.curvature_function()
        })
    })?;
    Ok(total / n as f64)
}

/// Dual quermassintegral of the polar body, `(1/n) ∫ h_K^{-(n-i)} dσ`.
pub fn dual_quermass(body: &SmoothBody, i: f64, q: &SphereQuadrature) -> Result<f64> {
    let n = body.dim() as f64;
    let total = q.integrate(&SphereRegion::Full, |u| {
        checked_pow(body.polar_radial(u), n - i, u)
    })?;
    Ok(total / n)
}

/// `∫_{∂K} H_1^alpha dH^{n-1}`.
pub fn curvature_energy(body: &SmoothBody, alpha: f64, q: &SphereQuadrature) -> Result<f64> {
    q.integrate(&SphereRegion::Full, |u| {
        let local = body.local_data(u)?;
        Ok(checked_pow(local.h_curvature(1), alpha, u)? * local.curvature_function())
    })
}
