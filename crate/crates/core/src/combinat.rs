//! Binomial and q-binomial coefficients.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{pow, Rational};

/// Falling-factorial binomial `n(n-1)...(n-k+1)/k!`, defined for every integer `n`.
pub fn binom(n: i64, k: u64) -> Rational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k as i64 {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    Rational::new(num, den)
}

/// Exact q-bracket arithmetic at a fixed rational `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QBracketContext {
    q: Rational,
}

impl QBracketContext {
    /// Requires `q != 0` and `q != 1`.
    pub fn new(q: Rational) -> Result<Self> {
        if q.is_zero() || q.is_one() {
            return Err(Error::Domain("q-bracket context needs q != 0 and q != 1".into()));
        }
        Ok(Self { q })
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    /// `[n]_q = (1 - q^n)/(1 - q)`.
    pub fn bracket(&self, n: i64) -> Rational {
        let qn = pow(&self.q, n).expect("q is nonzero");
        (Rational::one() - qn) / (Rational::one() - &self.q)
    }

    /// Gaussian binomial `[n]_q [n-1]_q ... [n-k+1]_q / ([k]_q ... [1]_q)`.
    pub fn qbinom(&self, n: u64, k: u64) -> Result<Rational> {
        if k > n {
            return Err(Error::Domain(format!("q-binomial needs k <= n, got n={n}, k={k}")));
        }
        let mut acc = Rational::one();
        for i in 0..k {
            acc *= self.bracket((n - i) as i64);
            acc /= self.bracket((i + 1) as i64);
        }
        Ok(acc)
    }
}

pub fn qbinom(n: u64, k: u64, ctx: &QBracketContext) -> Result<Rational> {
    ctx.qbinom(n, k)
}
