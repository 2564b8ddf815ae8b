use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::algebra::{binomial_power_into, curvature_weights, gen_binom, MAX_SERIES_ORDER};
use crate::bodies::{SmoothBody, UnitVector};
use crate::error::{Error, Result};
use crate::functionals::{checked_pow, PExponent};
use crate::quadrature::{SphereQuadrature, SphereRegion};

pub const DEFAULT_ORDER: u32 = 24;

/// Coefficient integrals `W[m][k]` for `0 <= m <= M`, `m <= k <= Kmax`.
///
/// JSON form: `{n, p, s, M, Kmax, beta, W}` with `null` where `k < m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionGrid {
    pub n: usize,
    pub p: PExponent,
    pub s: f64,
    #[serde(rename = "M")]
    pub m_max: u32,
    #[serde(rename = "Kmax")]
    pub k_max: u32,
    pub beta: f64,
    #[serde(rename = "W")]
    pub w: Vec<Vec<Option<f64>>>,
    /// Per-node curvature weights `c_j = binom(n-1, j) H_j`, kept for the
    /// expansion-validity check; not exported.
    #[serde(skip)]
    pub curvature_weights: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct CsvRow {
    m: u32,
    k: u32,
    value: f64,
}

impl ExpansionGrid {
    pub fn get(&self, m: u32, k: u32) -> Option<f64> {
        self.w.get(m as usize)?.get(k as usize).copied().flatten()
    }

    /// Support exponent `(n-s)(1-p)/(n+p)` of the grid.
    pub fn support_exponent(&self) -> f64 {
        self.p
            .exponents(self.n, self.s)
            .expect("grid exponents were validated at construction")
            .support
    }

    /// Curvature exponent `(n-s)/(n+p)` of the grid.
    pub fn curvature_exponent(&self) -> f64 {
        self.p
            .exponents(self.n, self.s)
            .expect("grid exponents were validated at construction")
            .curvature
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::InvalidArgument(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let grid: Self =
            serde_json::from_str(text).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        grid.validate()?;
        Ok(grid)
    }

    /// Writes the `(m, k, value)` table, defined entries only.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        for (m, row) in self.w.iter().enumerate() {
            for (k, value) in row.iter().enumerate() {
                if let Some(value) = value {
                    writer
                        .serialize(CsvRow {
                            m: m as u32,
                            k: k as u32,
                            value: *value,
                        })
                        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
                }
            }
        }
        writer.flush().map_err(|e| Error::InvalidArgument(e.to_string()))
    }

    /// Reads a table written by [`write_csv`](Self::write_csv); the header
    /// data `n, p, s, beta` are not part of the table and must be supplied.
    pub fn read_csv<R: Read>(input: R, n: usize, p: PExponent, s: f64, beta: f64) -> Result<Self> {
        let mut reader = csv::Reader::from_reader(input);
        let rows: Vec<CsvRow> = reader
            .deserialize()
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let m_max = rows.iter().map(|r| r.m).max().unwrap_or(0);
        let k_max = rows.iter().map(|r| r.k).max().unwrap_or(0);
        let mut w = vec![vec![None; k_max as usize + 1]; m_max as usize + 1];
        for r in rows {
            w[r.m as usize][r.k as usize] = Some(r.value);
        }
        let grid = Self {
            n,
            p,
            s,
            m_max,
            k_max,
            beta,
            w,
            curvature_weights: Vec::new(),
        };
        grid.validate()?;
        Ok(grid)
    }

    fn validate(&self) -> Result<()> {
        self.p.check(self.n)?;
        check_orders(self.m_max, self.k_max)?;
        if self.w.len() != self.m_max as usize + 1 {
            return Err(Error::InvalidArgument("grid has the wrong number of rows".into()));
        }
        for (m, row) in self.w.iter().enumerate() {
            if row.len() != self.k_max as usize + 1 {
                return Err(Error::InvalidArgument(format!("grid row {m} has the wrong length")));
            }
            for (k, v) in row.iter().enumerate() {
                if (k < m) != v.is_none() {
                    return Err(Error::InvalidArgument(format!(
                        "grid entry ({m}, {k}) must be {}",
                        if k < m { "null" } else { "present" }
                    )));
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn check_orders(m_max: u32, k_max: u32) -> Result<()> {
    for order in [m_max, k_max] {
        if order as usize > MAX_SERIES_ORDER {
            return Err(Error::TruncationTooLarge {
                order: order as usize,
                max: MAX_SERIES_ORDER,
            });
        }
    }
    Ok(())
}

/// Per-node integrand entries `f^a h^{b-k+m} A^m` of the grid.
pub(crate) struct NodeTerms {
    curvature: f64,
    support: f64,
    m_max: u32,
    k_max: u32,
}

impl NodeTerms {
    pub(crate) fn new(n: usize, p: PExponent, s: f64, m_max: u32, k_max: u32) -> Result<Self> {
        check_orders(m_max, k_max)?;
        let e = p.exponents(n, s)?;
        Ok(Self {
            curvature: e.curvature,
            support: e.support,
            m_max,
            k_max,
        })
    }

    pub(crate) fn width(&self) -> usize {
        (self.m_max as usize + 1) * (self.k_max as usize + 1)
    }

    /// Fills `out[m * (Kmax + 1) + k]` and returns the curvature weights.
    pub(crate) fn fill(&self, body: &SmoothBody, u: &UnitVector, out: &mut [f64]) -> Result<Vec<f64>> {
        let local = body.local_data(u)?;
        let c = curvature_weights(&local.h_curvatures());
        let mut a = vec![0.0; self.m_max as usize + 1];
        binomial_power_into(self.curvature, &c, &mut a);
        let h = local.support;
        let base = checked_pow(local.curvature_function(), self.curvature, u)?
            * checked_pow(h, self.support, u)?;
        let row = self.k_max as usize + 1;
        for (m, am) in a.iter().enumerate() {
            let mut value = base * am;
            for k in 0..row {
                if k >= m {
                    out[m * row + k] = value;
                    value /= h;
                }
            }
        }
        Ok(c)
    }

    /// Taylor coefficients in `t` of the integrand of the parallel body at
    /// one node, obtained by contracting the grid entries with
    /// `binom(b, k - m)`.
    pub(crate) fn node_coefficients(&self, body: &SmoothBody, u: &UnitVector) -> Result<Vec<f64>> {
        let mut entries = vec![0.0; self.width()];
        self.fill(body, u, &mut entries)?;
        let row = self.k_max as usize + 1;
        Ok((0..row)
            .map(|k| {
                (0..=k.min(self.m_max as usize))
                    .map(|m| gen_binom(self.support, (k - m) as i64) * entries[m * row + k])
                    .sum()
            })
            .collect())
    }
}

/// `W[m][k] = ∫ f^{(n-s)/(n+p)} h^{(n-s)(1-p)/(n+p) - k + m} A^m_{p,s} dσ`.
pub fn build_grid(
    body: &SmoothBody,
    p: PExponent,
    s: f64,
    m_max: u32,
    k_max: u32,
    q: &SphereQuadrature,
) -> Result<ExpansionGrid> {
    build_grid_on(body, p, s, m_max, k_max, &SphereRegion::Full, q)
}

/// The grid of the local measures `S_{m,k}(K, ω)` over `region`.
pub fn build_grid_on(
    body: &SmoothBody,
    p: PExponent,
    s: f64,
    m_max: u32,
    k_max: u32,
    region: &SphereRegion,
    q: &SphereQuadrature,
) -> Result<ExpansionGrid> {
    let mask = q.mask(region);
    build_grid_masked(body, p, s, m_max, k_max, &mask, q)
}

pub(crate) fn build_grid_masked(
    body: &SmoothBody,
    p: PExponent,
    s: f64,
    m_max: u32,
    k_max: u32,
    mask: &[bool],
    q: &SphereQuadrature,
) -> Result<ExpansionGrid> {
    let n = body.dim();
    let terms = NodeTerms::new(n, p, s, m_max, k_max)?;
    let flat = q.integrate_many_masked(mask, terms.width(), |u, out| {
        terms.fill(body, u, out).map(|_| ())
    })?;
    let curvature_weights = q
        .nodes()
        .iter()
        .zip(mask)
        .filter(|(_, &inside)| inside)
        .map(|(u, _)| {
            let local = body.local_data(u)?;
            Ok(crate::algebra::curvature_weights(&local.h_curvatures()))
        })
        .collect::<Result<_>>()?;
    let row = k_max as usize + 1;
    let w = (0..=m_max as usize)
        .map(|m| (0..row).map(|k| (k >= m).then(|| flat[m * row + k])).collect())
        .collect();
    Ok(ExpansionGrid {
        n,
        p,
        s,
        m_max,
        k_max,
        beta: body.beta(),
        w,
        curvature_weights,
    })
}

/// Pointwise Taylor coefficients `t^0..t^Kmax` of
/// `f_{K+t}^{(n-s)/(n+p)} h_{K+t}^{(n-s)(1-p)/(n+p)}` at `u`, assembled the
/// same way as the grid.
pub fn node_coefficients(
    body: &SmoothBody,
    p: PExponent,
    s: f64,
    u: &UnitVector,
    m_max: u32,
    k_max: u32,
) -> Result<Vec<f64>> {
    NodeTerms::new(body.dim(), p, s, m_max, k_max)?.node_coefficients(body, u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::{lp_quermass, mixed_asa};

    #[test]
    fn first_entry_is_mixed_asa() {
        let q = SphereQuadrature::build(2, 4).unwrap();
        let e = SmoothBody::ellipsoid(vec![1.0, 1.5]).unwrap();
        for (p, s) in [(1.0, 0.0), (-0.5, -1.0), (7.0, 2.0)] {
            let p = PExponent::Finite(p);
            let g = build_grid(&e, p, s, 4, 6, &q).unwrap();
            let direct = mixed_asa(&e, p, s, &q).unwrap();
            assert!((g.get(0, 0).unwrap() - direct).abs() < 1e-12 * direct);
        }
    }

    #[test]
    fn matches_lp_quermass_entries() {
        let q = SphereQuadrature::build(3, 3).unwrap();
        let e = SmoothBody::ellipsoid(vec![1.0, 1.2, 1.5]).unwrap();
        let p = PExponent::Finite(2.0);
        let g = build_grid(&e, p, 0.0, 3, 5, &q).unwrap();
        for m in 0..=3 {
            for k in m..=5 {
                let direct = lp_quermass(&e, p, m, k, &q).unwrap();
                let got = g.get(m, k).unwrap();
                assert!((got - direct).abs() <= 1e-12 * direct.abs().max(1.0), "({m},{k})");
            }
        }
        assert_eq!(g.get(2, 1), None);
    }

    #[test]
    fn ball_entries_are_constant_integrands() {
        let q = SphereQuadrature::build(3, 3).unwrap();
        let r: f64 = 2.0;
        let b = SmoothBody::ball(3, r).unwrap();
        let p = PExponent::Finite(1.0);
        let g = build_grid(&b, p, 0.0, 2, 3, &q).unwrap();
        // f = R^2, H_j = R^{-j}, a = 3/4, b = 0;
        // A^1 = a * 2/R, A^2 = a * 1/R^2 + binom(a, 2) * 4/R^2
        let a = 0.75;
        let a_m = [1.0, a * 2.0 / r, (a + gen_binom(a, 2) * 4.0) / (r * r)];
        for m in 0..=2u32 {
            for k in m..=3 {
                let expect = 4.0 * std::f64::consts::PI
                    * r.powf(2.0 * a)
                    * r.powi(m as i32 - k as i32)
                    * a_m[m as usize];
                let got = g.get(m, k).unwrap();
                assert!((got - expect).abs() < 1e-12 * expect, "({m},{k}) {got} vs {expect}");
            }
        }
    }

    #[test]
    fn rejects_bad_orders_and_minus_n() {
        let q = SphereQuadrature::build(2, 2).unwrap();
        let b = SmoothBody::ball(2, 1.0).unwrap();
        assert!(matches!(
            build_grid(&b, PExponent::Finite(1.0), 0.0, 65, 65, &q),
            Err(Error::TruncationTooLarge { order: 65, max: 64 })
        ));
        assert!(matches!(
            build_grid(&b, PExponent::Finite(-2.0), 0.0, 2, 2, &q),
            Err(Error::PEqualsMinusN { .. })
        ));
    }

    #[test]
    fn json_and_csv_round_trip_bitwise() {
        let q = SphereQuadrature::build(2, 3).unwrap();
        let e = SmoothBody::ellipsoid(vec![1.0, 1.7]).unwrap();
        let g = build_grid(&e, PExponent::NegInf, -1.0, 3, 5, &q).unwrap();
        let text = g.to_json().unwrap();
        assert!(text.contains("\"p\": \"-inf\""));
        let back = ExpansionGrid::from_json(&text).unwrap();
        assert_eq!(back.w, g.w);
        assert_eq!(back.to_json().unwrap(), text);

        let mut buf = Vec::new();
        g.write_csv(&mut buf).unwrap();
        let back = ExpansionGrid::read_csv(&buf[..], g.n, g.p, g.s, g.beta).unwrap();
        for (r1, r2) in back.w.iter().zip(&g.w) {
            for (a, b) in r1.iter().zip(r2) {
                assert_eq!(a.map(f64::to_bits), b.map(f64::to_bits));
            }
        }
    }

    #[test]
    fn malformed_grid_rejected() {
        let bad = r#"{"n":2,"p":1.0,"s":0.0,"M":1,"Kmax":1,"beta":1.0,"W":[[1.0,2.0],[3.0,4.0]]}"#;
        assert!(ExpansionGrid::from_json(bad).is_err());
        let good = r#"{"n":2,"p":1.0,"s":0.0,"M":1,"Kmax":1,"beta":1.0,"W":[[1.0,2.0],[null,4.0]]}"#;
        assert!(ExpansionGrid::from_json(good).is_ok());
    }
}
