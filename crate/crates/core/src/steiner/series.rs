use serde::Serialize;

use super::grid::{build_grid_masked, ExpansionGrid};
use crate::algebra::gen_binom;
use crate::bodies::SmoothBody;
use crate::error::{Error, Result};
use crate::functionals::{mixed_asa_masked, PExponent};
use crate::quadrature::{SphereQuadrature, SphereRegion};

pub const DEFAULT_TOLERANCE: f64 = 1e-8;
/// Offsets above this fraction of `β(K)` need [`SeriesOptions::allow_near_beta`].
pub const NEAR_BETA_FRACTION: f64 = 0.95;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    /// Absolute bound on the tail estimate for `converged`.
    pub tolerance: f64,
    pub allow_near_beta: bool,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_TOLERANCE,
            allow_near_beta: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesValue {
    pub value: f64,
    /// Largest term magnitude in the last retained band `k = Kmax`.
    pub tail_estimate: f64,
    pub t: f64,
    pub converged: bool,
    /// Whether `Σ_j binom(n-1, j) H_j t^j < 1` held at every node (only
    /// required for a non-integer curvature exponent).
    pub curvature_expansion_ok: bool,
}

/// Checks `0 <= t < β`, and `t <= 0.95 β` unless overridden.
pub fn check_offset(t: f64, beta: f64, opts: &SeriesOptions) -> Result<()> {
    let limit = if opts.allow_near_beta {
        beta
    } else {
        NEAR_BETA_FRACTION * beta
    };
    let inside = t >= 0.0 && t < beta && (opts.allow_near_beta || t <= limit);
    if !inside {
        return Err(Error::TNotInRange { t, beta, limit });
    }
    Ok(())
}

/// Coefficients of `t^0..t^Kmax`:
/// `c_k = Σ_{m <= min(k, M)} binom(b, k - m) W[m][k]`.
pub fn series_coefficients(grid: &ExpansionGrid) -> Vec<f64> {
    let b = grid.support_exponent();
    (0..=grid.k_max)
        .map(|k| {
            (0..=k.min(grid.m_max))
                .map(|m| gen_binom(b, (k - m) as i64) * grid.get(m, k).expect("k >= m"))
                .sum()
        })
        .collect()
}

/// `Σ_m Σ_k binom(b, k - m) W[m][k] t^k` with the final-band tail estimate.
pub fn evaluate_series(grid: &ExpansionGrid, t: f64, opts: &SeriesOptions) -> Result<SeriesValue> {
    check_offset(t, grid.beta, opts)?;
    let b = grid.support_exponent();
    let mut value = 0.0;
    let mut tail: f64 = 0.0;
    // Horner over k, with each band summed over m
    for k in (0..=grid.k_max).rev() {
        let band: Vec<f64> = (0..=k.min(grid.m_max))
            .map(|m| gen_binom(b, (k - m) as i64) * grid.get(m, k).expect("k >= m"))
            .collect();
        if k == grid.k_max {
            let tk = t.powi(k as i32);
            tail = band.iter().fold(0.0, |acc, x| acc.max((x * tk).abs()));
        }
        value = value * t + band.iter().sum::<f64>();
    }
    let a = grid.curvature_exponent();
    let polynomial = a >= 0.0 && a.fract() == 0.0;
    let curvature_expansion_ok = polynomial
        || grid.curvature_weights.iter().all(|c| {
            let mut tj = 1.0;
            c.iter()
                .map(|cj| {
                    tj *= t;
                    cj * tj
                })
                .sum::<f64>()
                < 1.0
        });
    Ok(SeriesValue {
        value,
        tail_estimate: tail,
        t,
        converged: t < grid.beta && tail <= opts.tolerance,
        curvature_expansion_ok,
    })
}

/// `as_{p,s}(K + tB)` evaluated directly on the parallel body.
pub fn direct_parallel_asa(
    body: &SmoothBody,
    p: PExponent,
    s: f64,
    t: f64,
    q: &SphereQuadrature,
) -> Result<f64> {
    direct_parallel_asa_on(body, p, s, t, &SphereRegion::Full, q)
}

/// As [`direct_parallel_asa`] over the normals in `region`; the mask is
/// taken from `body`, since the parallel body has the same normals.
pub fn direct_parallel_asa_on(
    body: &SmoothBody,
    p: PExponent,
    s: f64,
    t: f64,
    region: &SphereRegion,
    q: &SphereQuadrature,
) -> Result<f64> {
    let parallel = body.parallel_transform(t)?;
    let mask = q.mask(region);
    mixed_asa_masked(&parallel, p, s, &mask, q)
}

/// The local Steiner series `Σ binom(b, k - m) S_{m,k}(K, ω) t^k`.
#[allow(clippy::too_many_arguments)]
pub fn local_series(
    body: &SmoothBody,
    p: PExponent,
    s: f64,
    region: &SphereRegion,
    m_max: u32,
    k_max: u32,
    t: f64,
    opts: &SeriesOptions,
    q: &SphereQuadrature,
) -> Result<SeriesValue> {
    check_offset(t, body.beta(), opts)?;
    let mask = q.mask(region);
    let grid = build_grid_masked(body, p, s, m_max, k_max, &mask, q)?;
    evaluate_series(&grid, t, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::sphere_area;
    use crate::steiner::build_grid;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn zero_offset_gives_first_entry() {
        let q = SphereQuadrature::build(2, 4).unwrap();
        let e = SmoothBody::ellipsoid(vec![1.0, 1.5]).unwrap();
        let g = build_grid(&e, PExponent::Finite(2.0), 0.0, 8, 8, &q).unwrap();
        let v = evaluate_series(&g, 0.0, &SeriesOptions::default()).unwrap();
        assert_eq!(v.value, g.get(0, 0).unwrap());
        assert_eq!(v.tail_estimate, 0.0);
        assert!(v.converged);
    }

    #[test]
    fn ball_at_p_one() {
        let q = SphereQuadrature::build(3, 3).unwrap();
        let b = SmoothBody::ball(3, 2.0).unwrap();
        let g = build_grid(&b, PExponent::Finite(1.0), 0.0, 20, 20, &q).unwrap();
        let v = evaluate_series(&g, 0.5, &SeriesOptions::default()).unwrap();
        assert!(rel(v.value, 4.0 * PI * 2.5f64.powf(1.5)) < 1e-6);
    }

    #[test]
    fn ball_at_p_zero_is_polynomial() {
        let q = SphereQuadrature::build(3, 3).unwrap();
        let b = SmoothBody::ball(3, 1.3).unwrap();
        let g = build_grid(&b, PExponent::Finite(0.0), 0.0, 3, 3, &q).unwrap();
        for t in [0.2, 0.9, 1.2] {
            let v = evaluate_series(&g, t, &SeriesOptions::default()).unwrap();
            let expect = sphere_area(3) * (1.3f64 + t).powi(3);
            assert!(rel(v.value, expect) < 1e-13);
            assert!(v.curvature_expansion_ok);
        }
    }

    #[test]
    fn p_zero_grid_has_two_diagonals() {
        let q = SphereQuadrature::build(2, 4).unwrap();
        let e = SmoothBody::ellipsoid(vec![1.0, 2.0]).unwrap();
        let g = build_grid(&e, PExponent::Finite(0.0), 0.0, 6, 6, &q).unwrap();
        for m in 0..=6u32 {
            for k in m..=6 {
                let term = gen_binom(1.0, (k - m) as i64) * g.get(m, k).unwrap();
                if (m <= 1) && (k == m || k == m + 1) {
                    assert!(term.abs() > 1e-3);
                } else {
                    assert!(term.abs() < 1e-12, "({m},{k}) {term}");
                }
            }
        }
    }

    #[test]
    fn offset_range() {
        let q = SphereQuadrature::build(2, 2).unwrap();
        let b = SmoothBody::ball(2, 1.0).unwrap();
        let g = build_grid(&b, PExponent::Finite(1.0), 0.0, 4, 4, &q).unwrap();
        let opts = SeriesOptions::default();
        assert!(matches!(evaluate_series(&g, 1.0, &opts), Err(Error::TNotInRange { .. })));
        assert!(matches!(evaluate_series(&g, -0.1, &opts), Err(Error::TNotInRange { .. })));
        assert!(matches!(evaluate_series(&g, 0.97, &opts), Err(Error::TNotInRange { .. })));
        let near = SeriesOptions {
            allow_near_beta: true,
            ..opts
        };
        let v = evaluate_series(&g, 0.97, &near).unwrap();
        assert!(!v.converged);
        assert!(evaluate_series(&g, 1.0, &near).is_err());
    }

    #[test]
    fn direct_oracle() {
        let q = SphereQuadrature::build(3, 3).unwrap();
        let b = SmoothBody::ball(3, 1.0).unwrap();
        let p = PExponent::Finite(2.0);
        let d = direct_parallel_asa(&b, p, -1.0, 0.4, &q).unwrap();
        // n ω_n (R + t)^{(n-s)(n-p)/(n+p)}
        assert!(rel(d, 4.0 * PI * 1.4f64.powf(4.0 / 5.0)) < 1e-12);
        let e = SmoothBody::ellipsoid(vec![1.0, 1.2, 1.5]).unwrap();
        let d0 = direct_parallel_asa(&e, p, 0.0, 0.0, &q).unwrap();
        let a0 = crate::functionals::lp_asa(&e, p, &q).unwrap();
        assert!(rel(d0, a0) < 1e-12);
    }

    #[test]
    fn curvature_flag_on_ball() {
        // Σ c_j t^j = (1 + t/R)^2 - 1 crosses 1 at t = (√2 - 1) R
        let q = SphereQuadrature::build(3, 2).unwrap();
        let b = SmoothBody::ball(3, 1.0).unwrap();
        let g = build_grid(&b, PExponent::Finite(1.0), 0.0, 4, 4, &q).unwrap();
        let opts = SeriesOptions::default();
        assert!(evaluate_series(&g, 0.4, &opts).unwrap().curvature_expansion_ok);
        assert!(!evaluate_series(&g, 0.45, &opts).unwrap().curvature_expansion_ok);
    }

    #[test]
    fn local_series_on_hemisphere() {
        let q = SphereQuadrature::build(3, 3).unwrap();
        let b = SmoothBody::ball(3, 1.0).unwrap();
        let p = PExponent::Finite(1.0);
        let opts = SeriesOptions::default();
        let full = evaluate_series(&build_grid(&b, p, 0.0, 12, 12, &q).unwrap(), 0.2, &opts).unwrap();
        let cap = SphereRegion::Cap {
            center: crate::bodies::UnitVector::new(vec![0.0, 0.0, 1.0]).unwrap(),
            angle: PI / 2.0,
        };
        let half = local_series(&b, p, 0.0, &cap, 12, 12, 0.2, &opts, &q).unwrap();
        assert!(rel(half.value, full.value / 2.0) < 1e-10);
    }
}
