//! Exact expansion of the generating functions.
//!
//! Every family is a product of factors of the form `1/(1 + c e^{kt})`,
//! optional character-sum numerators, and `e^{xt}`. Each factor is built as a
//! truncated series, inverted, and multiplied out; the `n`-th polynomial value
//! is `n!` times the `t^n` coefficient.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::spec::{FamilyKind, FamilySpec};
use crate::error::{Error, Result};
use crate::rational::{factorial, int, pow, Rational};
use crate::series::TruncSeries;

/// `[E_0, ..., E_T]` for the family.
pub fn gf_expand(spec: &FamilySpec, order: usize) -> Result<Vec<Rational>> {
    Ok(generating_function(spec, order)?.egf_values())
}

/// The single value `E_n`.
pub fn gf_value(spec: &FamilySpec, n: usize) -> Result<Rational> {
    Ok(gf_expand(spec, n)?.swap_remove(n))
}

/// The generating function itself, truncated at `order`.
pub fn generating_function(spec: &FamilySpec, order: usize) -> Result<TruncSeries> {
    spec.validate()?;
    let q = &spec.q;
    let two_r = int(1 << spec.r.min(62));
    let exp_x = TruncSeries::exp_linear(&spec.x, order);

    let body = match spec.kind {
        FamilyKind::QEulerOrderR => {
            let factor = inv_one_plus(q, 1, order)?;
            factor.pow(spec.r)?.scale(&two_r)
        }
        FamilyKind::QEulerHR => {
            let mut acc = TruncSeries::constant(two_r, order);
            for j in 1..=spec.r as i64 {
                let c = pow(q, spec.h - j)?;
                acc = acc.mul(&inv_one_plus(&c, 1, order)?)?;
            }
            acc
        }
        FamilyKind::BarnesQEuler | FamilyKind::BarnesQEulerTwist | FamilyKind::ClassicalBarnesEuler => {
            let mut acc = TruncSeries::constant(two_r, order);
            for j in 0..spec.r {
                let w = spec.weights[j];
                let c = match spec.kind {
                    FamilyKind::BarnesQEuler => pow(q, w)?,
                    FamilyKind::BarnesQEulerTwist => pow(q, spec.twists[j])?,
                    _ => Rational::one(),
                };
                acc = acc.mul(&inv_one_plus(&c, w, order)?)?;
            }
            acc
        }
        FamilyKind::ChiQEuler | FamilyKind::ChiQEulerOrderR => {
            let chi = exact_character(spec)?;
            let f = chi.len() as i64;
            let neg_q = -q.clone();
            let mut num = TruncSeries::zero(order);
            for (a, &c) in chi.iter().enumerate() {
                if c != 0 {
                    let coef = pow(&neg_q, a as i64)? * int(2 * c as i64);
                    num = &num + &TruncSeries::exp_linear(&int(a as i64), order).scale(&coef);
                }
            }
            let factor = num.mul(&inv_one_plus(&pow(q, f)?, f, order)?)?;
            factor.pow(spec.r)?
        }
        FamilyKind::ChiBarnesQEuler => {
            let chi = exact_character(spec)?;
            let f = chi.len() as i64;
            let mut acc = TruncSeries::one(order);
            for j in 0..spec.r {
                let (w, a) = (spec.weights[j], spec.twists[j]);
                let qa = pow(q, a)?;
                let mut num = TruncSeries::zero(order);
                for (b, &c) in chi.iter().enumerate() {
                    if c != 0 {
                        let sign = if b % 2 == 0 { 2 } else { -2 };
                        let coef = pow(&qa, b as i64)? * int(sign * c as i64);
                        num = &num + &TruncSeries::exp_linear(&int(w * b as i64), order).scale(&coef);
                    }
                }
                let den = inv_one_plus(&pow(&qa, f)?, w * f, order)?;
                acc = acc.mul(&num)?.mul(&den)?;
            }
            acc
        }
        FamilyKind::BarnesBernoulli => {
            // t/(e^{at} - 1) = (1/a) * 1/u(t), u(t) = sum_k a^k t^k/(k+1)!
            let mut acc = TruncSeries::one(order);
            for &a in &spec.weights {
                let a = int(a);
                let u: Vec<Rational> = (0..=order)
                    .map(|k| {
                        pow(&a, k as i64).expect("nonnegative exponent")
                            / Rational::from_integer(factorial(k + 1))
                    })
                    .collect();
                let u = TruncSeries::from_coeffs(u, order);
                acc = acc.mul(&u.inv()?.scale(&a.recip()))?;
            }
            acc
        }
    };
    body.mul(&exp_x)
}

/// `1/(1 + c e^{kt})`, with a degenerate-parameter error when `1 + c = 0`.
fn inv_one_plus(c: &Rational, k: i64, order: usize) -> Result<TruncSeries> {
    let mut s = TruncSeries::exp_linear(&Rational::from_integer(BigInt::from(k)), order).scale(c);
    let c0 = s.coeff(0) + Rational::one();
    if c0.is_zero() {
        return Err(Error::Degenerate(format!("denominator factor 1 + {c}*e^({k}t) vanishes at t = 0")));
    }
    let mut coeffs = s.into_coeffs();
    coeffs[0] = c0;
    s = TruncSeries::from_coeffs(coeffs, order);
    s.inv()
}

fn exact_character(spec: &FamilySpec) -> Result<Vec<i8>> {
    let chi = spec.chi.as_ref().expect("validated");
    if !chi.is_real() {
        return Err(Error::Path(
            "exact expansion needs a real character; use the numeric series path".into(),
        ));
    }
    Ok((0..chi.conductor() as i64).map(|m| chi.eval_exact(m).expect("real")).collect())
}
