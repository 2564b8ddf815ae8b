//! Pointwise Steiner coefficients built from weighted compositions.
//!
//! `A^m_{p,s}` collects the multinomial expansion of
//! `(1 + sum_j binom(n-1, j) H_j t^j)^((n-s)/(n+p))`, and `A^m_{-n}` that of
//! `(1 + sum_q B_q t^q)^(1/2)`, term by term over the composition index set.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use super::binomial::{
    binomial_f64, gen_binom, gen_binom_exact, multinomial, multinomial_f64, rational_to_f64,
};
use super::compositions::weighted_compositions;
use crate::error::{Error, Result};

/// |n + p| below this is treated as `p = -n`.
pub const MINUS_N_GUARD: f64 = 1e-6;

#[derive(Debug, Clone)]
struct Term {
    coeff: f64,
    parts: Vec<u32>,
}

/// Precomputed composition terms of `(1 + sum_j c_j t^j)^alpha` up to a
/// fixed order, reusable across many evaluation points.
#[derive(Debug, Clone)]
pub struct CompositionExpansion {
    alpha: f64,
    part_sizes: usize,
    terms: Vec<Vec<Term>>,
}

impl CompositionExpansion {
    /// Expansion with `part_sizes` distinct powers `t^1..t^r`, orders `0..=max_order`.
    pub fn new(alpha: f64, part_sizes: usize, max_order: u32) -> Self {
        let terms = (0..=max_order)
            .map(|m| {
                weighted_compositions(m, part_sizes)
                    .into_iter()
                    .filter_map(|c| {
                        let total = c.total() as i64;
                        let binom = gen_binom(alpha, total);
                        if binom == 0.0 {
                            return None;
                        }
                        let parts: Vec<i64> = c.parts().iter().map(|&i| i as i64).collect();
                        let multi = match multinomial(total, &parts) {
                            Ok(v) => v as f64,
                            Err(_) => multinomial_f64(total, &parts),
                        };
                        Some(Term {
                            coeff: binom * multi,
                            parts: c.parts().to_vec(),
                        })
                    })
                    .collect()
            })
            .collect();
        Self {
            alpha,
            part_sizes,
            terms,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn max_order(&self) -> usize {
        self.terms.len() - 1
    }

    /// Coefficients of `t^0..t^max_order` for the given `c_1..c_r`.
    pub fn evaluate(&self, c: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.terms.len()];
        self.evaluate_into(c, &mut out);
        out
    }

    /// Same as [`evaluate`](Self::evaluate), writing into `out`.
    pub fn evaluate_into(&self, c: &[f64], out: &mut [f64]) {
        debug_assert_eq!(c.len(), self.part_sizes);
        let max = self.max_order();
        // powers[j][e] = c_j^e
        let powers: Vec<Vec<f64>> = c
            .iter()
            .enumerate()
            .map(|(j, &cj)| {
                let top = max / (j + 1);
                let mut row = Vec::with_capacity(top + 1);
                let mut acc = 1.0;
                for _ in 0..=top {
                    row.push(acc);
                    acc *= cj;
                }
                row
            })
            .collect();
        for (slot, terms) in out.iter_mut().zip(&self.terms) {
            let mut sum = 0.0;
            for term in terms {
                let mut prod = term.coeff;
                for (j, &i) in term.parts.iter().enumerate() {
                    if i > 0 {
                        prod *= powers[j][i as usize];
                    }
                }
                sum += prod;
            }
            *slot = sum;
        }
    }
}

fn check_p(p: f64, n: usize) -> Result<()> {
    if (n as f64 + p).abs() < MINUS_N_GUARD {
        return Err(Error::PEqualsMinusN { p, n });
    }
    Ok(())
}

/// Weights `c_j = binom(n-1, j) H_j` of the curvature polynomial
/// `1 + sum_j c_j t^j`, from `H = (H_1..H_{n-1})`.
pub fn curvature_weights(h: &[f64]) -> Vec<f64> {
    let n1 = h.len();
    h.iter()
        .enumerate()
        .map(|(idx, &hj)| binomial_f64(n1, idx + 1) * hj)
        .collect()
}

/// `A^m_{p,s}` at one point, given `H_1..H_{n-1}` (so `n = H.len() + 1`).
///
/// The composition terms alternate in sign and cancel heavily, so this
/// pointwise form is summed exactly over the rationals and rounded once;
/// [`CompositionExpansion`] is the fast floating-point counterpart.
pub fn a_coeff(p: f64, s: f64, m: u32, h: &[f64]) -> Result<f64> {
    let n = h.len() + 1;
    check_p(p, n)?;
    if h.is_empty() {
        return Err(Error::InvalidArgument("need n >= 2".into()));
    }
    let alpha = (n as f64 - s) / (n as f64 + p);
    let c = curvature_weights(h);
    let alpha = BigRational::from_float(alpha)
        .ok_or_else(|| Error::InvalidArgument(format!("non-finite exponent {alpha}")))?;
    exact_composition_sum(&alpha, &c, m)
        .ok_or_else(|| Error::InvalidArgument(format!("non-finite curvature weights {c:?}")))
}

/// `B_q(u) = sum_{k+i=q} binom(n-1,k) binom(n+1,i) H_k / h^i`, with
/// `H_0 = 1` and `H_k = 0` for `k > n-1`.
pub fn b_coeff(q: usize, h_curv: &[f64], support: f64) -> Result<f64> {
    let n = h_curv.len() + 1;
    if q == 0 || q > 2 * n {
        return Err(Error::InvalidArgument(format!(
            "B_q needs 1 <= q <= 2n, got q = {q}, n = {n}"
        )));
    }
    if !(support > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "support value must be positive, got {support}"
        )));
    }
    let mut total = 0.0;
    for k in 0..=q.min(n - 1) {
        let i = q - k;
        if i > n + 1 {
            continue;
        }
        let hk = if k == 0 { 1.0 } else { h_curv[k - 1] };
        total += binomial_f64(n - 1, k) * binomial_f64(n + 1, i) * hk / support.powi(i as i32);
    }
    Ok(total)
}

/// All `B_1..B_{2n}` at one point.
pub fn b_coeffs(h_curv: &[f64], support: f64) -> Result<Vec<f64>> {
    let n = h_curv.len() + 1;
    (1..=2 * n).map(|q| b_coeff(q, h_curv, support)).collect()
}

/// `A^m_{-n}` from `B_1..B_{2n}`.
///
pub fn a_coeff_neg_n(m: u32, b: &[f64]) -> f64 {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    exact_composition_sum(&half, b, m).unwrap_or(f64::NAN)
}

/// `Σ binom(alpha, |i|) multinomial(i) Π c_j^{i_j}` over the weighted
/// compositions of `m`, summed exactly from the binary values of `c`.
fn exact_composition_sum(alpha: &BigRational, c: &[f64], m: u32) -> Option<f64> {
    let c_exact = c.iter().map(|&x| BigRational::from_float(x)).collect::<Option<Vec<_>>>()?;
    let mut total = BigRational::zero();
    for comp in weighted_compositions(m, c.len()) {
        let binom = gen_binom_exact(alpha, comp.total() as i64);
        if binom.is_zero() {
            continue;
        }
        let mut term = binom * multinomial_exact(comp.parts());
        for (cj, &i) in c_exact.iter().zip(comp.parts()) {
            if i > 0 {
                term *= Pow::pow(cj, i);
            }
        }
        total += term;
    }
    Some(rational_to_f64(&total))
}

/// `q! / (i_1! ... i_r!)` with `q = Σ i_j`, as an exact integer.
fn multinomial_exact(parts: &[u32]) -> BigRational {
    let mut acc = BigInt::one();
    let mut seen: u64 = 0;
    for &i in parts {
        for j in 1..=u64::from(i) {
            seen += 1;
            acc = acc * BigInt::from(seen) / BigInt::from(j);
        }
    }
    BigRational::from_integer(acc)
}
