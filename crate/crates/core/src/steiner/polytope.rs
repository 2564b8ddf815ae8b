use serde::Serialize;

use super::grid::check_orders;
use super::series::{check_offset, SeriesOptions};
use crate::algebra::gen_binom;
use crate::bodies::{Polytope, UnitVector};
use crate::error::{Error, Result};
use crate::functionals::PExponent;
use crate::quadrature::{cone_rule, SphereQuadrature, SphereRegion};

/// Outcome of the polytope Steiner formula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum PolytopeSeries {
    /// Truncated series, with the magnitude of the last retained term.
    Series { value: f64, tail: f64 },
    Infinite,
    /// `n vol(P + tB)` from the classical Steiner polynomial.
    VolumeBranch { value: f64 },
}

impl PolytopeSeries {
    pub fn value(&self) -> f64 {
        match *self {
            PolytopeSeries::Series { value, .. } | PolytopeSeries::VolumeBranch { value } => value,
            PolytopeSeries::Infinite => f64::INFINITY,
        }
    }
}

/// `γ = (n-s)(1-p)/(n+p)` and the leading power `(n-1)(n-s)/(n+p)` of `t`.
fn polytope_exponents(n: usize, p: PExponent, s: f64) -> Result<(f64, f64)> {
    let e = p.exponents(n, s)?;
    Ok((e.support, (n as f64 - 1.0) * e.curvature))
}

/// Whether the polytope value is infinite for this `(p, s)`: the power of
/// `H_{n-1}` in the integrand, `(p+s)/(n+p)`, is negative.
fn is_infinite_case(n: usize, p: f64, s: f64) -> bool {
    let n = n as f64;
    (n > s && p >= -n && p < -s) || (n < s && p > -s && p <= -n)
}

/// `Σ_v ∫_{Norm v} <v, u>^e dσ`, one cone rule per vertex.
fn cone_sum(poly: &Polytope, level: u32, g: impl Fn(f64) -> f64 + Sync) -> Result<f64> {
    let mut total = 0.0;
    for (v, cone) in poly.vertices().iter().zip(poly.cones()) {
        let rule: SphereQuadrature = cone_rule(cone, level);
        total += rule.integrate(&SphereRegion::Full, |u: &UnitVector| Ok(g(u.dot(v))))?;
    }
    Ok(total)
}

/// `as_{p,s}(P + tB)` by the polytope Steiner formula.
///
/// Returns `+∞` when the curvature factor of the polytope is raised to a
/// negative power (`p ∈ [-n, -s)` for `n > s`, `p ∈ (-s, -n]` for `n < s`),
/// and the volume branch at `p = s = 0`.
pub fn polytope_series(
    poly: &Polytope,
    p: PExponent,
    s: f64,
    m_max: u32,
    t: f64,
    opts: &SeriesOptions,
    level: u32,
) -> Result<PolytopeSeries> {
    check_orders(m_max, 0)?;
    check_offset(t, poly.beta(), opts)?;
    let n = poly.dim();
    if let PExponent::Finite(pv) = p {
        if p.is_minus_n(n) {
            if s == 0.0 {
                return Ok(PolytopeSeries::Infinite);
            }
            return Err(Error::PEqualsMinusN { p: pv, n });
        }
        if is_infinite_case(n, pv, s) {
            return Ok(PolytopeSeries::Infinite);
        }
        if pv == 0.0 && s == 0.0 {
            return Ok(PolytopeSeries::VolumeBranch {
                value: n as f64 * poly.steiner_volume(t),
            });
        }
    }
    let (gamma, lead) = polytope_exponents(n, p, s)?;
    let mut value = 0.0;
    let mut tail = 0.0;
    for m in 0..=m_max {
        let binom = gen_binom(gamma, m as i64);
        if binom == 0.0 {
            continue;
        }
        let moment = cone_sum(poly, level, |h| h.powf(gamma - m as f64))?;
        let term = binom * moment * t.powf(m as f64 + lead);
        value += term;
        if m == m_max {
            tail = term.abs();
        }
    }
    Ok(PolytopeSeries::Series { value, tail })
}

/// `t^{(n-1)(n-s)/(n+p)} Σ_v ∫_{Norm v} (<v, u> + t)^γ dσ`, the unexpanded
/// form of the series; meaningful where the series is finite.
pub fn direct_polytope_asa(poly: &Polytope, p: PExponent, s: f64, t: f64, level: u32) -> Result<f64> {
    let (gamma, lead) = polytope_exponents(poly.dim(), p, s)?;
    Ok(t.powf(lead) * cone_sum(poly, level, |h| (h + t).powf(gamma))?)
}
