//! Finite-level fermionic p-adic sums.
//!
//! The fermionic q-integral of `f` is the limit over `N` of
//! `(1+q)/(1+q^{p^N}) * sum_{y < p^N} f(y) (-q)^y`. Here every level-`N` sum is
//! computed exactly modulo `p^M`, and convergence is observed through the
//! p-adic valuation of differences between levels or against an exact oracle.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::combinat::binom;
use crate::error::{Error, Result};
use crate::families::{gf_value, FamilyKind, FamilySpec};
use crate::rational::{int, pow, Rational};

/// Most level-`N` summands (`r * p^N`) one call may evaluate.
pub const SUMMAND_BUDGET: u64 = 2_000_000;

/// A residue modulo `p^M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicInt {
    p: u64,
    precision: u32,
    residue: u64,
}

fn modulus(p: u64, precision: u32) -> Result<u64> {
    p.checked_pow(precision)
        .filter(|m| *m < (1 << 62))
        .ok_or_else(|| Error::Domain(format!("p^M = {p}^{precision} exceeds 2^62")))
}

impl PadicInt {
    pub fn new(p: u64, precision: u32, value: i128) -> Result<Self> {
        if p < 3
            || p.is_multiple_of(2)
            || (3..).step_by(2).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d))
        {
            return Err(Error::Usage(format!("p must be an odd prime, got {p}")));
        }
        if precision == 0 {
            return Err(Error::Usage("precision M must be positive".into()));
        }
        let m = modulus(p, precision)? as i128;
        Ok(Self { p, precision, residue: value.rem_euclid(m) as u64 })
    }

    fn with_residue(&self, residue: u64) -> Self {
        Self { residue, ..*self }
    }

    pub fn zero(p: u64, precision: u32) -> Result<Self> {
        Self::new(p, precision, 0)
    }

    pub fn one(p: u64, precision: u32) -> Result<Self> {
        Self::new(p, precision, 1)
    }

    /// `numerator * denominator^{-1}` mod `p^M`; fails if `p` divides the denominator.
    pub fn from_rational(r: &Rational, p: u64, precision: u32) -> Result<Self> {
        let m = BigInt::from(modulus(p, precision)?);
        if r.denom().is_multiple_of(&BigInt::from(p)) {
            return Err(Error::Reduction(format!("{r} is not {p}-integral")));
        }
        let num = r.numer().mod_floor(&m).to_i128().expect("reduced");
        let den = r.denom().mod_floor(&m).to_i128().expect("reduced");
        let den = Self::new(p, precision, den)?;
        Ok(Self::new(p, precision, num)? * den.inv()?)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    fn modulus(&self) -> u64 {
        self.p.pow(self.precision)
    }

    pub fn is_unit(&self) -> bool {
        !self.residue.is_multiple_of(self.p)
    }

    /// Largest `v <= M` with `p^v` dividing the residue.
    pub fn valuation(&self) -> u32 {
        if self.residue == 0 {
            return self.precision;
        }
        let mut v = 0;
        let mut r = self.residue;
        while r.is_multiple_of(self.p) {
            r /= self.p;
            v += 1;
        }
        v
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = self.with_residue(1 % self.modulus());
        let mut b = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b;
            }
            b = b * b;
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::Domain(format!("{} is not a unit mod {}", self.residue, self.p)));
        }
        let m = self.modulus() as i128;
        let g = (self.residue as i128).extended_gcd(&m);
        debug_assert_eq!(g.gcd, 1);
        Ok(self.with_residue(g.x.rem_euclid(m) as u64))
    }

    /// Integer power with negative exponents allowed for units.
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    fn check_same(&self, other: &Self) {
        assert!(
            self.p == other.p && self.precision == other.precision,
            "mixing residues mod {}^{} and {}^{}",
            self.p,
            self.precision,
            other.p,
            other.precision
        );
    }
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {}^{})", self.residue, self.p, self.precision)
    }
}

impl Add for PadicInt {
    type Output = PadicInt;
    fn add(self, rhs: PadicInt) -> PadicInt {
        self.check_same(&rhs);
        let m = self.modulus();
        self.with_residue(((self.residue as u128 + rhs.residue as u128) % m as u128) as u64)
    }
}

impl Sub for PadicInt {
    type Output = PadicInt;
    fn sub(self, rhs: PadicInt) -> PadicInt {
        self + (-rhs)
    }
}

impl Neg for PadicInt {
    type Output = PadicInt;
    fn neg(self) -> PadicInt {
        let m = self.modulus();
        self.with_residue((m - self.residue) % m)
    }
}

impl Mul for PadicInt {
    type Output = PadicInt;
    fn mul(self, rhs: PadicInt) -> PadicInt {
        self.check_same(&rhs);
        let m = self.modulus() as u128;
        self.with_residue((self.residue as u128 * rhs.residue as u128 % m) as u64)
    }
}

/// `base^{sum_j e_j y_j} * P(y_1 + ... + y_r)` with rational coefficients.
///
/// The number of variables is `exponents.len()`; an unweighted integrand has
/// `base = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegrandPoly {
    pub coeffs: Vec<Rational>,
    pub base: Rational,
    pub exponents: Vec<i64>,
}

impl IntegrandPoly {
    /// Univariate polynomial `sum_k c_k y^k`.
    pub fn polynomial(coeffs: Vec<Rational>) -> Self {
        Self { coeffs, base: int(1), exponents: vec![0] }
    }

    pub fn constant_one() -> Self {
        Self::polynomial(vec![int(1)])
    }

    /// `y^n`.
    pub fn power(n: usize) -> Self {
        let mut c = vec![Rational::zero(); n + 1];
        c[n] = int(1);
        Self::polynomial(c)
    }

    /// `(x + y)^n`.
    pub fn shifted_power(x: &Rational, n: usize) -> Self {
        let coeffs =
            (0..=n).map(|k| binom(n as i64, k as u64) * pow(x, (n - k) as i64).expect("x^k")).collect();
        Self::polynomial(coeffs)
    }

    /// Attach the weight `base^{sum_j e_j y_j}`; the arity becomes `exponents.len()`.
    pub fn with_weight(mut self, base: Rational, exponents: Vec<i64>) -> Self {
        self.base = base;
        self.exponents = exponents;
        self
    }

    pub fn arity(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// `f(y + n)` for a univariate integrand.
    pub fn shift(&self, n: i64) -> Result<Self> {
        if self.arity() != 1 {
            return Err(Error::Usage("shift is defined for univariate integrands".into()));
        }
        let d = self.degree();
        let mut coeffs = vec![Rational::zero(); d + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            for (i, slot) in coeffs.iter_mut().enumerate().take(k + 1) {
                *slot += c * binom(k as i64, i as u64) * pow(&int(n), (k - i) as i64)?;
            }
        }
        let scale = pow(&self.base, self.exponents[0] * n)?;
        for c in &mut coeffs {
            *c *= &scale;
        }
        Ok(Self { coeffs, base: self.base.clone(), exponents: self.exponents.clone() })
    }

    /// Exact value at integer `y` (univariate).
    pub fn eval(&self, y: i64) -> Result<Rational> {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * int(y) + c;
        }
        Ok(acc * pow(&self.base, self.exponents[0] * y)?)
    }

    /// The integrand whose iterated `I_1` integral is `E_n` of the family:
    /// `q^{sum y_j} (x + sum y_j)^n` for the order-`r` family and
    /// `q^{sum (h-j) y_j} (x + sum y_j)^n` for the `(h, r)` family.
    pub fn for_family(spec: &FamilySpec, n: usize) -> Result<Self> {
        let poly = Self::shifted_power(&spec.x, n);
        let exponents = match spec.kind {
            FamilyKind::QEulerOrderR => vec![1; spec.r],
            FamilyKind::QEulerHR => (1..=spec.r as i64).map(|j| spec.h - j).collect(),
            other => {
                return Err(Error::Unsupported(format!(
                    "no polynomial integrand in the sum of the variables for family {other}"
                )))
            }
        };
        Ok(poly.with_weight(spec.q.clone(), exponents))
    }

    fn reduced_coeffs(&self, p: u64, precision: u32) -> Result<Vec<PadicInt>> {
        self.coeffs.iter().map(|c| PadicInt::from_rational(c, p, precision)).collect()
    }
}

fn check_measure_q(q: &Rational, p: u64, precision: u32) -> Result<PadicInt> {
    let qp = PadicInt::from_rational(q, p, precision)?;
    if qp.residue() % p != 1 % p {
        return Err(Error::Domain(format!("measure parameter q = {q} must satisfy q = 1 mod {p}")));
    }
    Ok(qp)
}

fn level_size(p: u64, level: u32, arity: usize) -> Result<u64> {
    let max_level = (0..=64u32)
        .take_while(|&n| p.checked_pow(n).is_some_and(|s| s.saturating_mul(arity as u64) <= SUMMAND_BUDGET))
        .last()
        .unwrap_or(0);
    match p.checked_pow(level) {
        Some(size) if size.saturating_mul(arity as u64) <= SUMMAND_BUDGET => Ok(size),
        _ => Err(Error::Budget {
            message: format!("{arity} x {p}^{level} summands exceed the budget of {SUMMAND_BUDGET}"),
            max_level,
        }),
    }
}

/// `(1+q)/(1+q^{p^N})`, a unit because `1 + q^{p^N} = 2 mod p`.
fn prefactor(qp: PadicInt, size: u64) -> Result<PadicInt> {
    let one = qp.with_residue(1);
    Ok((one + qp) * (one + qp.pow(size)).inv()?)
}

/// Moments `sum_{y < size} (-q)^y base^{e y} y^k` for `k = 0..=degree`.
fn weighted_moments(qp: PadicInt, weight: PadicInt, size: u64, degree: usize) -> Vec<PadicInt> {
    let zero = qp.with_residue(0);
    let mut moments = vec![zero; degree + 1];
    let step = -qp * weight;
    let mut c = qp.with_residue(1);
    for y in 0..size {
        let yp = qp.with_residue(y % qp.modulus());
        let mut term = c;
        for m in moments.iter_mut() {
            *m = *m + term;
            term = term * yp;
        }
        c = c * step;
    }
    moments
}

/// Level-`N` fermionic sum `(1+q)/(1+q^{p^N}) sum_{y<p^N} f(y) (-q)^y` mod `p^M`.
///
/// `q = 1` gives the `I_1` sums; any other `q` must be `1 mod p`.
pub fn fermionic_sum(
    f: &IntegrandPoly,
    q: &Rational,
    p: u64,
    level: u32,
    precision: u32,
) -> Result<PadicInt> {
    if f.arity() != 1 {
        return Err(Error::Usage("fermionic_sum takes a univariate integrand".into()));
    }
    fermionic_sum_multi(f, q, 1, p, level, precision)
}

/// The `r`-fold level-`N` sum of `base^{sum e_j y_j} P(y_1 + ... + y_r)` against
/// the product of fermionic weights, mod `p^M`.
///
/// The integrand depends on the variables only through their sum and a
/// product weight, so the `p^{rN}` summands are aggregated by convolving
/// per-variable moment vectors; the cost is `r * p^N * deg`.
pub fn fermionic_sum_multi(
    f: &IntegrandPoly,
    q: &Rational,
    r: usize,
    p: u64,
    level: u32,
    precision: u32,
) -> Result<PadicInt> {
    PadicInt::new(p, precision, 0)?;
    if r == 0 || f.arity() != r {
        return Err(Error::Usage(format!("integrand has {} variables, expected r = {r}", f.arity())));
    }
    let size = level_size(p, level, r)?;
    let qp = check_measure_q(q, p, precision)?;
    let coeffs = f.reduced_coeffs(p, precision)?;
    let base = PadicInt::from_rational(&f.base, p, precision)?;
    let degree = f.degree();

    let binoms: Vec<Vec<PadicInt>> = (0..=degree)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let b = binom(k as i64, i as u64);
                    PadicInt::from_rational(&b, p, precision).expect("integer")
                })
                .collect()
        })
        .collect();

    let mut total: Option<Vec<PadicInt>> = None;
    for &e in &f.exponents {
        let weight = base.powi(e)?;
        let mu = weighted_moments(qp, weight, size, degree);
        total = Some(match total {
            None => mu,
            Some(acc) => (0..=degree)
                .map(|k| (0..=k).fold(qp.with_residue(0), |s, i| s + binoms[k][i] * acc[i] * mu[k - i]))
                .collect(),
        });
    }
    let moments = total.expect("r >= 1");
    let sum = coeffs.iter().zip(&moments).fold(qp.with_residue(0), |s, (c, m)| s + *c * *m);
    Ok(sum * prefactor(qp, size)?.pow(r as u64))
}

/// One row of a convergence table.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelRow {
    pub level: u32,
    pub value: PadicInt,
    /// Valuation of the difference to the reference (or to the previous level).
    pub valuation: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub rows: Vec<LevelRow>,
}

impl ConvergenceReport {
    pub fn monotone(&self) -> bool {
        self.rows.windows(2).all(|w| w[0].valuation <= w[1].valuation)
    }

    pub fn min_margin(&self, offset: i64) -> i64 {
        self.rows.iter().map(|r| r.valuation as i64 - (r.level as i64 - offset)).min().unwrap_or(0)
    }
}

/// Level sums of the family's integrand against the exact `E_n` reduced mod `p^M`.
pub fn oracle_convergence(
    spec: &FamilySpec,
    n: usize,
    p: u64,
    levels: impl IntoIterator<Item = u32>,
    precision: u32,
) -> Result<ConvergenceReport> {
    let f = IntegrandPoly::for_family(spec, n)?;
    let oracle = PadicInt::from_rational(&gf_value(spec, n)?, p, precision)?;
    let rows = levels
        .into_iter()
        .map(|level| {
            let value = fermionic_sum_multi(&f, &int(1), spec.r, p, level, precision)?;
            Ok(LevelRow { level, value, valuation: (value - oracle).valuation() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceReport { rows })
}

/// Valuations of `S_{N+1} - S_N` for consecutive levels.
pub fn level_stability(
    f: &IntegrandPoly,
    q: &Rational,
    p: u64,
    levels: impl IntoIterator<Item = u32>,
    precision: u32,
) -> Result<ConvergenceReport> {
    let r = f.arity();
    let rows = levels
        .into_iter()
        .map(|level| {
            let a = fermionic_sum_multi(f, q, r, p, level, precision)?;
            let b = fermionic_sum_multi(f, q, r, p, level + 1, precision)?;
            Ok(LevelRow { level, value: b, valuation: (b - a).valuation() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceReport { rows })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PadicComparison {
    pub lhs: PadicInt,
    pub rhs: PadicInt,
}

impl PadicComparison {
    pub fn valuation(&self) -> u32 {
        (self.lhs - self.rhs).valuation()
    }
}

/// `I_1(f(. + n)) = (-1)^n I_1(f) + 2 sum_{l<n} (-1)^{n-1-l} f(l)` at level `N`.
pub fn check_shift_identity(
    f: &IntegrandPoly,
    n: u64,
    p: u64,
    level: u32,
    precision: u32,
) -> Result<PadicComparison> {
    let one = int(1);
    let shifted = f.shift(n as i64)?;
    let lhs = fermionic_sum(&shifted, &one, p, level, precision)?;
    let base = fermionic_sum(f, &one, p, level, precision)?;
    let mut boundary = Rational::zero();
    for l in 0..n as i64 {
        let v = f.eval(l)?;
        if (n as i64 - 1 - l) % 2 == 0 {
            boundary += v;
        } else {
            boundary -= v;
        }
    }
    let boundary = PadicInt::from_rational(&(boundary * int(2)), p, precision)?;
    let rhs = if n.is_multiple_of(2) { base } else { -base } + boundary;
    Ok(PadicComparison { lhs, rhs })
}

/// `I_{q_k}(f)` against `I_1(f)` at level `N`, with `q_k = 1 + p^k`.
pub fn check_q_limit(
    f: &IntegrandPoly,
    p: u64,
    k: u32,
    level: u32,
    precision: u32,
) -> Result<PadicComparison> {
    let qk = Rational::from_integer(BigInt::one() + num_traits::pow(BigInt::from(p), k as usize));
    let lhs = fermionic_sum(f, &qk, p, level, precision)?;
    let rhs = fermionic_sum(f, &int(1), p, level, precision)?;
    Ok(PadicComparison { lhs, rhs })
}
