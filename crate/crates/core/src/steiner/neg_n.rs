use super::grid::check_orders;
use super::series::{check_offset, SeriesOptions};
use crate::algebra::{b_coeffs, binomial_power_into};
use crate::bodies::{SmoothBody, UnitVector};
use crate::error::Result;
use crate::functionals::NodeMaximum;
use crate::quadrature::{SphereQuadrature, SphereRegion};

pub const DEFAULT_NEG_N_ORDER: u32 = 16;

/// `A^0_{-n}..A^M_{-n}` at one node, from `(1 + Σ_q B_q t^q)^{1/2}`.
pub(crate) struct NegNTerms {
    order: usize,
    half_up: f64,
}

impl NegNTerms {
    pub(crate) fn new(n: usize, m_max: u32) -> Result<Self> {
        check_orders(m_max, 0)?;
        Ok(Self {
            order: m_max as usize,
            half_up: (n as f64 + 1.0) / 2.0,
        })
    }

    pub(crate) fn value(&self, body: &SmoothBody, u: &UnitVector, t: f64) -> Result<f64> {
        let local = body.local_data(u)?;
        let b = b_coeffs(&local.h_curvatures(), local.support)?;
        let mut a = vec![0.0; self.order + 1];
        binomial_power_into(0.5, &b, &mut a);
        let series = a.iter().rev().fold(0.0, |acc, am| acc * t + am);
        Ok(local.curvature_function().sqrt() * local.support.powf(self.half_up) * series)
    }
}

/// `f^{1/2} h^{(n+1)/2} Σ_{m <= M} A^m_{-n}(u) t^m` at a single node.
pub fn node_series_neg_n(body: &SmoothBody, u: &UnitVector, m_max: u32, t: f64) -> Result<f64> {
    NegNTerms::new(body.dim(), m_max)?.value(body, u, t)
}

/// `as_{-n}(K + tB)` as the largest node value of the full truncated
/// product `f^{1/2} h^{(n+1)/2} Σ_m A^m_{-n}(u) t^m`.
pub fn series_neg_n(
    body: &SmoothBody,
    m_max: u32,
    t: f64,
    opts: &SeriesOptions,
    q: &SphereQuadrature,
) -> Result<NodeMaximum> {
    check_offset(t, body.beta(), opts)?;
    let terms = NegNTerms::new(body.dim(), m_max)?;
    let (value, index) = q.max_over(&SphereRegion::Full, |u| terms.value(body, u, t))?;
    Ok(NodeMaximum {
        value,
        index,
        direction: q.nodes()[index].clone(),
    })
}
