//! Power series in `q` truncated at a fixed order, with coefficients in
//! [`BivariatePolynomial`].
//!
//! Infinite products of the shape `prod (1 - s^a t^b q^k)^(-e)` are made
//! finite by dropping every factor with `k > q_max`; such a factor is
//! `1 + O(q^(q_max + 1))` and cannot change any retained coefficient.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::poly::BivariatePolynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("truncation orders differ: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },
    #[error("coefficient index {index} is beyond the truncation order {q_max}")]
    IndexOutOfRange { index: usize, q_max: usize },
}

/// `sum_{m=0}^{q_max} c_m q^m`, always holding exactly `q_max + 1`
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    q_max: usize,
    coeffs: Vec<BivariatePolynomial>,
}

/// One factor `(1 - s^s_exp t^t_exp q^q_exp)^(-exponent)` of a product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProductFactor {
    pub s_exp: u32,
    pub t_exp: u32,
    pub q_exp: usize,
    pub exponent: i64,
}

impl ProductFactor {
    pub fn new(s_exp: u32, t_exp: u32, q_exp: usize, exponent: i64) -> Self {
        assert!(q_exp >= 1, "a product factor needs a positive power of q");
        Self {
            s_exp,
            t_exp,
            q_exp,
            exponent,
        }
    }
}

impl TruncatedSeries {
    pub fn zero(q_max: usize) -> Self {
        Self {
            q_max,
            coeffs: vec![BivariatePolynomial::zero(); q_max + 1],
        }
    }

    pub fn one(q_max: usize) -> Self {
        Self::constant(BivariatePolynomial::one(), q_max)
    }

    pub fn constant(c: BivariatePolynomial, q_max: usize) -> Self {
        let mut out = Self::zero(q_max);
        out.coeffs[0] = c;
        out
    }

    /// Builds a series from leading coefficients; missing ones are zero and
    /// anything past `q_max` is discarded.
    pub fn from_coeffs(mut coeffs: Vec<BivariatePolynomial>, q_max: usize) -> Self {
        coeffs.resize(q_max + 1, BivariatePolynomial::zero());
        Self { q_max, coeffs }
    }

    pub fn q_max(&self) -> usize {
        self.q_max
    }

    pub fn coeffs(&self) -> &[BivariatePolynomial] {
        &self.coeffs
    }

    /// Coefficient of `q^m`.
    pub fn coefficient(&self, m: usize) -> Result<&BivariatePolynomial, SeriesError> {
        self.coeffs.get(m).ok_or(SeriesError::IndexOutOfRange {
            index: m,
            q_max: self.q_max,
        })
    }

    fn check_same_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.q_max != other.q_max {
            return Err(SeriesError::TruncationMismatch {
                left: self.q_max,
                right: other.q_max,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_same_order(other)?;
        Ok(Self {
            q_max: self.q_max,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    /// Cauchy product truncated at `q_max`.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_same_order(other)?;
        let coeffs = (0..=self.q_max)
            .map(|m| {
                let mut c = BivariatePolynomial::zero();
                for u in 0..=m {
                    let (a, b) = (&self.coeffs[u], &other.coeffs[m - u]);
                    if !a.is_zero() && !b.is_zero() {
                        c += &(a * b);
                    }
                }
                c
            })
            .collect();
        Ok(Self {
            q_max: self.q_max,
            coeffs,
        })
    }

    /// Multiplies every coefficient by a polynomial in `s`, `t`.
    pub fn scale(&self, factor: &BivariatePolynomial) -> Self {
        Self {
            q_max: self.q_max,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Multiplies by `q`, dropping the top coefficient.
    pub fn shift_q(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.q_max + 1);
        coeffs.push(BivariatePolynomial::zero());
        coeffs.extend(self.coeffs[..self.q_max].iter().cloned());
        Self {
            q_max: self.q_max,
            coeffs,
        }
    }

    /// The `s = t = 1` specialization, one integer per power of `q`.
    pub fn eval_one(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(BivariatePolynomial::eval_one).collect()
    }

    pub fn swap_st(&self) -> Self {
        Self {
            q_max: self.q_max,
            coeffs: self.coeffs.iter().map(BivariatePolynomial::swap_st).collect(),
        }
    }

    pub fn is_st_symmetric(&self) -> bool {
        self.coeffs.iter().all(BivariatePolynomial::is_st_symmetric)
    }

    /// Multiplies in place by one factor of a product.
    ///
    /// Coefficient `m` of the result only reads coefficients `m - n k` of the
    /// input, so all output coefficients are computed independently.
    fn apply_factor(&mut self, factor: &ProductFactor) {
        let k = factor.q_exp;
        if factor.exponent == 0 || k > self.q_max {
            return;
        }
        let binomials = negative_binomial_coefficients(factor.exponent, self.q_max / k);
        let source = &self.coeffs;
        let coeffs: Vec<BivariatePolynomial> = (0..=self.q_max)
            .into_par_iter()
            .map(|m| {
                let mut c = BivariatePolynomial::zero();
                for (n, binom) in binomials.iter().enumerate().take(m / k + 1) {
                    let n32 = n as u32;
                    c.add_scaled_shifted(
                        &source[m - n * k],
                        binom,
                        n32 * factor.s_exp,
                        n32 * factor.t_exp,
                    );
                }
                c
            })
            .collect();
        self.coeffs = coeffs;
    }
}

/// Coefficients `c_0..=c_n_max` of `(1 - u)^(-e) = sum_n c_n u^n`.
///
/// `c_n = e (e + 1) ... (e + n - 1) / n!`, valid for either sign of `e`;
/// for negative `e` the sequence terminates after `|e|` terms.
pub fn negative_binomial_coefficients(e: i64, n_max: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut c = BigInt::one();
    out.push(c.clone());
    for n in 1..=n_max {
        c = c * BigInt::from(e + n as i64 - 1) / BigInt::from(n);
        out.push(c.clone());
    }
    out
}

/// Truncated expansion of the single factor `(1 - s^a t^b q^k)^(-e)`.
pub fn series_factor(a: u32, b: u32, k: usize, e: i64, q_max: usize) -> TruncatedSeries {
    let mut coeffs = vec![BivariatePolynomial::zero(); q_max + 1];
    let binomials = negative_binomial_coefficients(e, q_max / k);
    for (n, c) in binomials.into_iter().enumerate() {
        if !c.is_zero() {
            let n32 = n as u32;
            coeffs[n * k] = BivariatePolynomial::monomial(n32 * a, n32 * b, c);
        }
    }
    TruncatedSeries { q_max, coeffs }
}

/// Product of [`series_factor`] over all factors, truncated at `q_max`.
///
/// Factors are applied in the order given; exact arithmetic makes the
/// result independent of that order and of the thread count.
pub fn series_product(factors: &[ProductFactor], q_max: usize) -> TruncatedSeries {
    let mut out = TruncatedSeries::one(q_max);
    for factor in factors.iter().filter(|f| f.q_exp <= q_max) {
        out.apply_factor(factor);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(u32, u32, i64)]) -> BivariatePolynomial {
        BivariatePolynomial::from_terms(terms.iter().copied())
    }

    #[test]
    fn geometric_factor() {
        let f = series_factor(1, 1, 1, 1, 2);
        assert_eq!(f.coefficient(0).unwrap(), &BivariatePolynomial::one());
        assert_eq!(f.coefficient(1).unwrap(), &poly(&[(1, 1, 1)]));
        assert_eq!(f.coefficient(2).unwrap(), &poly(&[(2, 2, 1)]));
    }

    #[test]
    fn zero_exponent_factor_is_one() {
        assert_eq!(series_factor(2, 1, 1, 0, 6), TruncatedSeries::one(6));
    }

    #[test]
    fn factor_times_inverse_is_one() {
        for &(a, b, k, e) in &[(1, 1, 1, 1), (0, 2, 2, 20), (3, 1, 1, -4), (2, 2, 3, 7)] {
            let f = series_factor(a, b, k, e, 10);
            let g = series_factor(a, b, k, -e, 10);
            assert_eq!(f.mul(&g).unwrap(), TruncatedSeries::one(10));
        }
    }

    #[test]
    fn negative_exponent_is_a_finite_binomial() {
        let f = series_factor(1, 0, 1, -2, 5);
        assert_eq!(f.coefficient(1).unwrap(), &poly(&[(1, 0, -2)]));
        assert_eq!(f.coefficient(2).unwrap(), &poly(&[(2, 0, 1)]));
        assert!(f.coeffs()[3..].iter().all(BivariatePolynomial::is_zero));
    }

    #[test]
    fn telescoping_product() {
        let q_max = 7;
        let one_minus_q = TruncatedSeries::from_coeffs(
            vec![BivariatePolynomial::one(), poly(&[(0, 0, -1)])],
            q_max,
        );
        let all_ones = TruncatedSeries::from_coeffs(vec![BivariatePolynomial::one(); q_max + 1], q_max);
        assert_eq!(one_minus_q.mul(&all_ones).unwrap(), TruncatedSeries::one(q_max));
    }

    #[test]
    fn mismatched_orders_are_rejected() {
        let a = TruncatedSeries::one(3);
        let b = TruncatedSeries::one(4);
        assert_eq!(
            a.mul(&b),
            Err(SeriesError::TruncationMismatch { left: 3, right: 4 })
        );
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn coefficient_access() {
        let a = TruncatedSeries::from_coeffs(vec![BivariatePolynomial::one(), poly(&[(1, 1, 1)])], 1);
        assert_eq!(a.coefficient(1).unwrap(), &poly(&[(1, 1, 1)]));
        assert_eq!(a.coefficient(0).unwrap(), &BivariatePolynomial::one());
        assert_eq!(
            a.coefficient(2),
            Err(SeriesError::IndexOutOfRange { index: 2, q_max: 1 })
        );
    }

    #[test]
    fn empty_and_single_products() {
        assert_eq!(series_product(&[], 5), TruncatedSeries::one(5));
        let f = ProductFactor::new(2, 1, 2, 3);
        assert_eq!(series_product(&[f], 9), series_factor(2, 1, 2, 3, 9));
    }

    #[test]
    fn factors_past_the_truncation_are_skipped() {
        let f = ProductFactor::new(1, 1, 6, 5);
        assert_eq!(series_product(&[f], 5), TruncatedSeries::one(5));
    }

    #[test]
    fn euler_specialization_of_three_colors() {
        let factors: Vec<_> = (1..=3).map(|k| ProductFactor::new(0, 0, k, 3)).collect();
        let euler = series_product(&factors, 3).eval_one();
        let expected: Vec<BigInt> = [1, 3, 9, 22].into_iter().map(BigInt::from).collect();
        assert_eq!(euler, expected);
    }

    #[test]
    fn binomials_for_both_signs() {
        let pos: Vec<i64> = negative_binomial_coefficients(3, 4)
            .iter()
            .map(|c| c.try_into().unwrap())
            .collect();
        assert_eq!(pos, vec![1, 3, 6, 10, 15]);
        let neg: Vec<i64> = negative_binomial_coefficients(-3, 5)
            .iter()
            .map(|c| c.try_into().unwrap())
            .collect();
        assert_eq!(neg, vec![1, -3, 3, -1, 0, 0]);
    }

    #[test]
    fn shift_q_drops_the_top() {
        let a = series_factor(1, 1, 1, 1, 2).shift_q();
        assert!(a.coefficient(0).unwrap().is_zero());
        assert_eq!(a.coefficient(1).unwrap(), &BivariatePolynomial::one());
        assert_eq!(a.coefficient(2).unwrap(), &poly(&[(1, 1, 1)]));
    }
}
