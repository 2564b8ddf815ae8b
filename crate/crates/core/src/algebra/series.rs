//! Dense truncated power series `c_0 + c_1 t + ... + c_M t^M`.
//!
//! Arithmetic keeps the smaller truncation order of its operands and never
//! touches coefficients past it.

use std::ops::{Add, Mul};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::binomial::{gen_binom, gen_binom_exact, rational_to_f64};
use crate::error::{Error, Result};

/// Highest supported truncation order.
pub const MAX_SERIES_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesPoly<T = f64> {
    coeffs: Vec<T>,
}

fn check_order(order: usize) -> Result<()> {
    if order > MAX_SERIES_ORDER {
        return Err(Error::TruncationTooLarge {
            order,
            max: MAX_SERIES_ORDER,
        });
    }
    Ok(())
}

impl<T> SeriesPoly<T>
where
    T: Clone + Zero + One,
    for<'a> &'a T: Add<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    /// Series of truncation order `order`; extra input coefficients are
    /// dropped and missing ones are zero.
    pub fn new(mut coeffs: Vec<T>, order: usize) -> Result<Self> {
        check_order(order)?;
        coeffs.resize(order + 1, T::zero());
        Ok(Self { coeffs })
    }

    pub fn zero(order: usize) -> Result<Self> {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Result<Self> {
        Self::new(vec![T::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &T {
        &self.coeffs[j]
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|j| &self.coeffs[j] + &other.coeffs[j])
            .collect();
        Self { coeffs }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|j| {
                let mut acc = T::zero();
                for i in 0..=j {
                    acc = &acc + &(&self.coeffs[i] * &other.coeffs[j - i]);
                }
                acc
            })
            .collect();
        Self { coeffs }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// `sum_i coeff(i) X^i` where `self = c_0 + X`; the constant term of
    /// `self` is ignored, so `X` starts at `t^1` and `X^i` at `t^i`.
    pub fn binomial_compose(&self, coeff: impl Fn(i64) -> T) -> Self {
        let order = self.order();
        let mut x = self.clone();
        x.coeffs[0] = T::zero();
        let mut result = Self::one(order).expect("order already validated");
        let mut power = Self::one(order).expect("order already validated");
        for i in 1..=order {
            power = power.mul(&x);
            let ci = coeff(i as i64);
            for (r, p) in result.coeffs.iter_mut().zip(&power.coeffs) {
                *r = &*r + &(p * &ci);
            }
        }
        result
    }
}

impl SeriesPoly<f64> {
    /// `(1 + X)^alpha` for a series with unit constant term.
    pub fn powf(&self, alpha: f64) -> Result<Self> {
        if self.coeffs[0] != 1.0 {
            return Err(Error::InvalidArgument(format!(
                "binomial power needs constant term 1, got {}",
                self.coeffs[0]
            )));
        }
        Ok(self.binomial_compose(|i| gen_binom(alpha, i)))
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }
}

impl SeriesPoly<BigRational> {
    /// Exact `(1 + X)^alpha` for rational `alpha`.
    pub fn pow_rational(&self, alpha: &BigRational) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::InvalidArgument(
                "binomial power needs constant term 1".into(),
            ));
        }
        Ok(self.binomial_compose(|i| gen_binom_exact(alpha, i)))
    }
}

/// Coefficients `t^0..t^{out.len()-1}` of `(1 + sum_j c_j t^j)^alpha`, with
/// `c[0]` the coefficient of `t^1`, by the recurrence
/// `k a_k = sum_j ((alpha + 1) j - k) c_j a_{k-j}`.
pub fn binomial_power_into(alpha: f64, c: &[f64], out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    out[0] = 1.0;
    for k in 1..out.len() {
        let mut sum = 0.0;
        for (j, &cj) in c.iter().enumerate().take(k) {
            let j = j + 1;
            sum += ((alpha + 1.0) * j as f64 - k as f64) * cj * out[k - j];
        }
        out[k] = sum / k as f64;
    }
}

/// Truncated series of `(1 + sum_k c_k t^k)^alpha (1 + hinv t)^beta`, where
/// `c[0]` is the coefficient of `t^1`.
///
/// Evaluated exactly over the rationals from the binary values of the inputs
/// and rounded once per coefficient.
pub fn series_oracle(
    alpha: f64,
    c: &[f64],
    beta: f64,
    hinv: f64,
    order: usize,
) -> Result<SeriesPoly<f64>> {
    let exact = |x: f64| {
        BigRational::from_float(x)
            .ok_or_else(|| Error::InvalidArgument(format!("series input {x} is not finite")))
    };
    let mut base = vec![BigRational::one()];
    for &cj in c {
        base.push(exact(cj)?);
    }
    let curvature = SeriesPoly::new(base, order)?.pow_rational(&exact(alpha)?)?;
    let support =
        SeriesPoly::new(vec![BigRational::one(), exact(hinv)?], order)?.pow_rational(&exact(beta)?)?;
    let coeffs = curvature.mul(&support).coeffs().iter().map(rational_to_f64).collect();
    SeriesPoly::new(coeffs, order)
}
