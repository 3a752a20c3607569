//! Truncated formal power series in `t` over the rationals.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial, Rational};

/// Default truncation order used by the generating-function expansions.
pub const DEFAULT_ORDER: usize = 16;

/// `c_0 + c_1 t + ... + c_T t^T + O(t^{T+1})`, stored densely.
///
/// The coefficient vector always has exactly `order + 1` entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<Rational>,
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Builds from explicit coefficients, padding with zeros or truncating to `order`.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let t = self.order();
        let mut out = Self::zero(t);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=t - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse through degree `T`.
    ///
    /// Uses `b_0 = 1/c_0`, `b_k = -(1/c_0) * sum_{i=1..k} c_i b_{k-i}`.
    pub fn inv(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NonInvertible);
        }
        let inv0 = c0.recip();
        let t = self.order();
        let mut b: Vec<Rational> = Vec::with_capacity(t + 1);
        b.push(inv0.clone());
        for k in 1..=t {
            let mut acc = Rational::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &b[k - i];
                }
            }
            b.push(-acc * &inv0);
        }
        Ok(Self { coeffs: b })
    }

    pub fn pow(&self, e: usize) -> Result<Self> {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `e^{ct}` truncated: coefficients `c^k / k!`.
    pub fn exp_linear(c: &Rational, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = Rational::one();
        coeffs.push(term.clone());
        for k in 1..=order {
            term = term * c / Rational::from_integer(BigInt::from(k));
            coeffs.push(term.clone());
        }
        Self { coeffs }
    }

    /// Coefficients scaled by `k!`: the `n`-th entry of the result is `n! c_n`.
    pub fn egf_values(&self) -> Vec<Rational> {
        self.coeffs.iter().enumerate().map(|(k, c)| c * Rational::from_integer(factorial(k))).collect()
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::Usage(format!(
                "truncation order mismatch: {} vs {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;

    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        assert_eq!(self.order(), rhs.order(), "truncation order mismatch");
        TruncSeries { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;

    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        assert_eq!(self.order(), rhs.order(), "truncation order mismatch");
        TruncSeries { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;

    fn neg(self) -> TruncSeries {
        TruncSeries { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;

    /// Panics on order mismatch; use [`TruncSeries::mul`] for a `Result`.
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        TruncSeries::mul(self, rhs).expect("truncation order mismatch")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn ts(cs: &[Rational]) -> TruncSeries {
        TruncSeries::from_coeffs(cs.to_vec(), cs.len() - 1)
    }

    #[test]
    fn difference_of_squares() {
        let a = ts(&[int(1), int(1), int(0)]);
        let b = ts(&[int(1), int(-1), int(0)]);
        assert_eq!(a.mul(&b).unwrap(), ts(&[int(1), int(0), int(-1)]));
    }

    #[test]
    fn exp_times_exp_neg() {
        let e = TruncSeries::exp_linear(&int(1), 10);
        let em = TruncSeries::exp_linear(&int(-1), 10);
        assert_eq!(e.mul(&em).unwrap(), TruncSeries::one(10));
    }

    #[test]
    fn geometric() {
        let g = TruncSeries::from_coeffs(vec![int(1); 6], 5);
        let one_minus_t = TruncSeries::from_coeffs(vec![int(1), int(-1)], 5);
        assert_eq!(g.mul(&one_minus_t).unwrap(), TruncSeries::one(5));
    }

    #[test]
    fn inverse_examples() {
        let a = TruncSeries::from_coeffs(vec![int(1), int(1)], 3);
        assert_eq!(a.inv().unwrap(), ts(&[int(1), int(-1), int(1), int(-1)]));
        assert_eq!(TruncSeries::constant(int(2), 0).inv().unwrap(), ts(&[ratio(1, 2)]));
        let e = TruncSeries::exp_linear(&int(1), 3);
        assert_eq!(e.inv().unwrap(), TruncSeries::exp_linear(&int(-1), 3));
        assert_eq!(TruncSeries::zero(3).inv(), Err(Error::NonInvertible));
    }

    #[test]
    fn exp_linear_examples() {
        assert_eq!(TruncSeries::exp_linear(&int(0), 3), TruncSeries::one(3));
        assert_eq!(
            TruncSeries::exp_linear(&int(1), 4),
            ts(&[int(1), int(1), ratio(1, 2), ratio(1, 6), ratio(1, 24)])
        );
        assert_eq!(TruncSeries::exp_linear(&ratio(1, 2), 2), ts(&[int(1), ratio(1, 2), ratio(1, 8)]));
    }

    #[test]
    fn order_mismatch_is_usage_error() {
        let a = TruncSeries::one(2);
        let b = TruncSeries::one(3);
        assert!(matches!(a.mul(&b), Err(Error::Usage(_))));
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let a = TruncSeries::from_coeffs(vec![int(2), ratio(-1, 3), int(5)], 6);
        let cubed = a.mul(&a).unwrap().mul(&a).unwrap();
        assert_eq!(a.pow(3).unwrap(), cubed);
        assert_eq!(a.pow(0).unwrap(), TruncSeries::one(6));
    }
}
