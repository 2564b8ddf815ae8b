//! Generalized binomial and multinomial coefficients.
//!
//! Coefficients with a rational upper argument are evaluated in exact
//! rational arithmetic whenever the lower index is at most
//! [`EXACT_INDEX_LIMIT`]; the float product formula is used otherwise.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest |k| evaluated exactly by [`gen_binom`].
pub const EXACT_INDEX_LIMIT: i64 = 64;

/// Largest denominator accepted when recognising a float as a rational.
const MAX_RECOGNISED_DENOMINATOR: i64 = 1 << 24;

/// Generalized binomial coefficient `alpha choose k` for real `alpha`.
///
/// Returns 1 for `k = 0` and 0 for `k < 0`.
pub fn gen_binom(alpha: f64, k: i64) -> f64 {
    if k < 0 {
        return 0.0;
    }
    if k == 0 {
        return 1.0;
    }
    if k <= EXACT_INDEX_LIMIT {
        if let Some(exact) = recognise_rational(alpha) {
            return rational_to_f64(&gen_binom_exact(&exact, k));
        }
    }
    gen_binom_float(alpha, k)
}

/// Plain product formula `alpha (alpha-1) ... (alpha-k+1) / k!` in floats.
pub fn gen_binom_float(alpha: f64, k: i64) -> f64 {
    if k < 0 {
        return 0.0;
    }
    let mut acc = 1.0;
    for j in 0..k {
        acc *= (alpha - j as f64) / (j + 1) as f64;
    }
    acc
}

/// Exact generalized binomial coefficient over the rationals.
pub fn gen_binom_exact(alpha: &BigRational, k: i64) -> BigRational {
    if k < 0 {
        return BigRational::zero();
    }
    let mut acc = BigRational::one();
    for j in 0..k {
        let factor = alpha - BigRational::from_integer(BigInt::from(j));
        if factor.is_zero() {
            return BigRational::zero();
        }
        acc = acc * factor / BigRational::from_integer(BigInt::from(j + 1));
    }
    acc
}

/// Recognises `x` as `num/den` with a small denominator, if the float is
/// exactly the nearest double to that fraction.
pub fn recognise_rational(x: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    if x.fract() == 0.0 && x.abs() < 9.0e15 {
        return Some(BigRational::from_integer(BigInt::from(x as i64)));
    }
    if x.abs() >= 9.0e15 {
        return None;
    }
    // continued fraction convergents h/k
    let (mut h_prev, mut h) = (1i64, x.floor() as i64);
    let (mut k_prev, mut k) = (0i64, 1i64);
    let mut rem = x - x.floor();
    for _ in 0..40 {
        if (h as f64) / (k as f64) == x {
            return Some(BigRational::new(BigInt::from(h), BigInt::from(k)));
        }
        if rem == 0.0 {
            break;
        }
        let inv = 1.0 / rem;
        let a = inv.floor();
        rem = inv - a;
        let a = a as i64;
        let h_next = a.checked_mul(h)?.checked_add(h_prev)?;
        let k_next = a.checked_mul(k)?.checked_add(k_prev)?;
        if k_next > MAX_RECOGNISED_DENOMINATOR {
            break;
        }
        (h_prev, h) = (h, h_next);
        (k_prev, k) = (k, k_next);
    }
    None
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Ordinary binomial coefficient with overflow detection.
pub fn binomial(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        // acc * (n - j) is always divisible by (j + 1)
        acc = acc
            .checked_mul((n - j) as u128)
            .ok_or(Error::Overflow { what: "binomial" })?
            / (j + 1) as u128;
    }
    Ok(acc)
}

/// `binom(n, k)` as a float, for small table lookups.
pub fn binomial_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for j in 0..k {
        acc = acc * (n - j) as f64 / (j + 1) as f64;
    }
    acc.round()
}

/// Multinomial coefficient `q! / (i_1! ... i_r!)`.
///
/// Vanishes when a part is negative, exceeds `q`, or the parts do not sum
/// to `q` (no such term exists in the multinomial expansion).
pub fn multinomial(q: i64, parts: &[i64]) -> Result<u128> {
    if q < 0 || parts.iter().any(|&i| i < 0 || i > q) {
        return Ok(0);
    }
    if parts.iter().sum::<i64>() != q {
        return Ok(0);
    }
    let mut running = 0u64;
    let mut acc: u128 = 1;
    for &i in parts {
        running += i as u64;
        acc = acc
            .checked_mul(binomial(running, i as u64)?)
            .ok_or(Error::Overflow {
                what: "multinomial",
            })?;
    }
    Ok(acc)
}

/// Float multinomial via a product of binomials; used when the exact
/// integer does not fit in 128 bits.
pub fn multinomial_f64(q: i64, parts: &[i64]) -> f64 {
    if q < 0 || parts.iter().any(|&i| i < 0 || i > q) || parts.iter().sum::<i64>() != q {
        return 0.0;
    }
    let mut running = 0usize;
    let mut acc = 1.0;
    for &i in parts {
        running += i as usize;
        acc *= binomial_f64(running, i as usize);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn gen_binom_vanishes_for_integer_alpha_below_k() {
        assert_eq!(gen_binom(3.0, 5), 0.0);
        assert_eq!(gen_binom(3.0, 3), 1.0);
    }

    #[test]
    fn gen_binom_edge_indices() {
        for alpha in [-7.5, -1.0, 0.0, 0.3, 2.0, 1e6] {
            assert_eq!(gen_binom(alpha, 0), 1.0);
            assert_eq!(gen_binom(alpha, -1), 0.0);
            assert_eq!(gen_binom(alpha, -10), 0.0);
        }
    }

    #[test]
    fn gen_binom_half() {
        assert_eq!(gen_binom(0.5, 2), -0.125);
        assert_eq!(gen_binom_exact(&q(1, 2), 2), q(-1, 8));
    }

    #[test]
    fn gen_binom_negative_integer() {
        // (-3 choose k) = (-1)^k (k+2 choose 2)
        for k in 0..20 {
            let expect = if k % 2 == 0 { 1.0 } else { -1.0 } * ((k + 1) * (k + 2) / 2) as f64;
            assert_eq!(gen_binom(-3.0, k), expect);
        }
    }

    #[test]
    fn exact_path_matches_float_path() {
        for alpha in [0.75, -1.25, 2.0 / 3.0, 1.2, -4.0 / 3.0] {
            for k in 0..30 {
                let a = gen_binom(alpha, k);
                let b = gen_binom_float(alpha, k);
                assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-300), "{alpha} {k}");
            }
        }
    }

    #[test]
    fn recognises_common_exponents() {
        assert_eq!(recognise_rational(0.75), Some(q(3, 4)));
        assert_eq!(recognise_rational(2.0 / 2.5), Some(q(4, 5)));
        assert_eq!(recognise_rational(3.0 / 7.0), Some(q(3, 7)));
        assert_eq!(recognise_rational(-1.0), Some(q(-1, 1)));
        assert_eq!(recognise_rational(std::f64::consts::PI), None);
        assert_eq!(recognise_rational(f64::INFINITY), None);
    }

    #[test]
    fn pascal_recurrence_is_exact() {
        for (n, d) in [(1, 2), (-7, 3), (5, 1), (3, 4), (-1, 1), (11, 5)] {
            let alpha = q(n, d);
            let a1 = &alpha - BigRational::one();
            for k in -2..=40 {
                assert_eq!(
                    gen_binom_exact(&alpha, k),
                    gen_binom_exact(&a1, k) + gen_binom_exact(&a1, k - 1),
                    "alpha={alpha} k={k}"
                );
            }
        }
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(2, &[1, 1]).unwrap(), 2);
        assert_eq!(multinomial(3, &[3]).unwrap(), 1);
        assert_eq!(multinomial(2, &[-1, 3]).unwrap(), 0);
        assert_eq!(multinomial(4, &[5, 0]).unwrap(), 0);
        assert_eq!(multinomial(6, &[1, 2, 3]).unwrap(), 60);
        assert_eq!(multinomial(0, &[0, 0, 0]).unwrap(), 1);
    }

    #[test]
    fn multinomial_overflow_is_reported() {
        let parts = [12i64; 12];
        assert_eq!(
            multinomial(144, &parts),
            Err(Error::Overflow {
                what: "multinomial"
            })
        );
        assert!(multinomial_f64(144, &parts).is_finite());
    }

    #[test]
    fn binomial_small_table() {
        assert_eq!(binomial(4, 2).unwrap(), 6);
        assert_eq!(binomial(3, 5).unwrap(), 0);
        assert_eq!(binomial_f64(4, 2), 6.0);
        assert_eq!(binomial(60, 30).unwrap(), 118264581564861424);
    }
}
