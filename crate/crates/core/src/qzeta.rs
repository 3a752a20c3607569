//! Barnes-type q-zeta and Dirichlet-type q-l-functions of order `r`.
//!
//! For `0 < q < 1` the series
//! `2^r sum_m chi(m_1)..chi(m_r) (-1)^{|m|} q^{w.m} (x + w.m)^{-s}`
//! converges absolutely for every complex `s`, so both functions are
//! evaluated by direct nested summation.

use num_complex::Complex64;
use num_rational::BigRational;
use statrs::function::gamma::{gamma, gamma_ur};

use crate::dirichlet::DirichletCharacter;
use crate::error::{Error, Result};
use crate::families::{gf_value, series_sum, FamilyKind, FamilySpec, NumericFamilySpec, SeriesForm};
use crate::multisum::{Axis, Coef, Growth, MultiSum};
use crate::quadrature::integrate;
use crate::rational::{to_f64, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct ZetaParams {
    pub q: f64,
    pub x: f64,
    pub w: Vec<f64>,
    pub chi: Option<DirichletCharacter>,
    /// Absolute truncation tolerance.
    pub tol: f64,
}

impl ZetaParams {
    pub fn new(q: f64, x: f64, w: Vec<f64>) -> Self {
        Self { q, x, w, chi: None, tol: 1e-12 }
    }

    pub fn with_chi(mut self, chi: DirichletCharacter) -> Self {
        self.chi = Some(chi);
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn order(&self) -> usize {
        self.w.len()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.q > 0.0 && self.q < 1.0) {
            return Err(Error::Divergent(format!("the series needs 0 < q < 1, got q = {}", self.q)));
        }
        if self.x.is_nan() || self.x <= 0.0 {
            return Err(Error::Domain(format!("x must be positive, got {}", self.x)));
        }
        if self.w.is_empty() {
            return Err(Error::Usage("at least one weight is required".into()));
        }
        if self.w.iter().any(|w| !(*w > 0.0 && w.is_finite())) {
            return Err(Error::Domain("weights must be positive".into()));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::Usage("tolerance must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexVal {
    pub re: f64,
    pub im: f64,
    /// Bound on truncation plus accumulated rounding error.
    pub err_bound: f64,
}

impl ComplexVal {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// A summation together with the cutoffs that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaEval {
    pub value: ComplexVal,
    pub cutoffs: Vec<u64>,
    pub terms: u64,
}

/// `zeta_q^{(r)}(s, x | w)`.
pub fn zeta_qr(s: Complex64, params: &ZetaParams) -> Result<ComplexVal> {
    Ok(evaluate(s, params, None, 1)?.value)
}

/// `l_q^{(r)}(s, x; chi | w)`; `params.chi` must be set.
pub fn l_qr(s: Complex64, params: &ZetaParams) -> Result<ComplexVal> {
    let chi = params.chi.as_ref().ok_or_else(|| Error::Usage("the l-function needs a character".into()))?;
    Ok(evaluate(s, params, Some(chi), 1)?.value)
}

/// Evaluates with every cutoff multiplied by `cutoff_factor` (>= 1); the
/// character is used when `params.chi` is set.
pub fn evaluate_scaled(s: Complex64, params: &ZetaParams, cutoff_factor: u64) -> Result<ZetaEval> {
    evaluate(s, params, params.chi.as_ref(), cutoff_factor.max(1))
}

fn evaluate(
    s: Complex64,
    params: &ZetaParams,
    chi: Option<&DirichletCharacter>,
    cutoff_factor: u64,
) -> Result<ZetaEval> {
    params.validate()?;
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::Domain("s must be finite".into()));
    }
    let sum = MultiSum {
        prefactor: 2f64.powi(params.order() as i32),
        axes: params
            .w
            .iter()
            .map(|&w| Axis::Geometric {
                ratio: params.q.powf(w),
                scale: w,
                chi: chi.cloned(),
                coef: Coef::One,
            })
            .collect(),
    };
    // |(x + u)^{-s}| = (x + u)^{-Re s}
    let growth = if s.re >= 0.0 {
        Growth { degree: 0.0, base: params.x, constant: params.x.powf(-s.re) }
    } else {
        Growth { degree: -s.re, base: params.x, constant: 1.0 }
    };
    let cutoffs: Vec<u64> =
        sum.cutoffs(&growth, params.tol, 10)?.into_iter().map(|c| (c + 1) * cutoff_factor - 1).collect();
    let x = params.x;
    let r = sum.evaluate_with(&growth, &cutoffs, |u| (-s * (x + u).ln()).exp())?;
    Ok(ZetaEval {
        value: ComplexVal { re: r.value.re, im: r.value.im, err_bound: r.tail_bound + r.rounding_bound },
        cutoffs: r.cutoffs,
        terms: r.terms,
    })
}

/// Interpolation at a non-positive integer against the polynomial side.
#[derive(Debug, Clone, PartialEq)]
pub struct InterpolationReport {
    pub n: usize,
    pub zeta: ComplexVal,
    pub reference: Complex64,
    /// Zero when the reference came from the exact expansion.
    pub reference_bound: f64,
    pub exact_reference: bool,
}

impl InterpolationReport {
    pub fn abs_error(&self) -> f64 {
        (self.zeta.value() - self.reference).norm()
    }

    pub fn rel_error(&self) -> f64 {
        self.abs_error() / self.reference.norm().max(1.0)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.rel_error() <= tol
    }
}

fn exact(v: f64) -> Result<Rational> {
    BigRational::from_float(v).ok_or_else(|| Error::Domain(format!("{v} is not finite")))
}

fn integer_weights(w: &[f64]) -> Option<Vec<i64>> {
    w.iter().map(|&v| (v.fract() == 0.0 && v <= i64::MAX as f64).then_some(v as i64)).collect()
}

/// Compares `zeta(-n)` (or `l(-n)` when a character is set) with the
/// Barnes-type polynomial value at the same parameters.
///
/// The reference is the exact generating-function coefficient, with `q` and
/// `x` taken as the exact binary values of the floats, whenever weights are
/// integers and the character is real; otherwise the family's series sum.
pub fn check_interpolation(n: usize, params: &ZetaParams) -> Result<InterpolationReport> {
    params.validate()?;
    let s = Complex64::new(-(n as f64), 0.0);
    let zeta = match &params.chi {
        Some(_) => l_qr(s, params)?,
        None => zeta_qr(s, params)?,
    };
    let int_w = integer_weights(&params.w);
    let real_chi = params.chi.as_ref().is_none_or(|c| c.is_real());
    if let (Some(w), true) = (int_w, real_chi) {
        let (q, x) = (exact(params.q)?, exact(params.x)?);
        let spec = match &params.chi {
            None => FamilySpec::barnes(q, x, w),
            Some(chi) => FamilySpec::chi_barnes(q, x, w.clone(), w, chi.clone()),
        };
        let v = gf_value(&spec, n)?;
        return Ok(InterpolationReport {
            n,
            zeta,
            reference: Complex64::new(to_f64(&v), 0.0),
            reference_bound: 0.0,
            exact_reference: true,
        });
    }
    let r = params.order();
    let numeric = NumericFamilySpec {
        kind: if params.chi.is_some() { FamilyKind::ChiBarnesQEuler } else { FamilyKind::BarnesQEulerTwist },
        q: params.q,
        x: params.x,
        r,
        h: 0,
        weights: params.w.clone(),
        twists: params.w.clone(),
        chi: params.chi.clone(),
    };
    let v = series_sum(&numeric, n, SeriesForm::MultiIndex, params.tol)?;
    Ok(InterpolationReport {
        n,
        zeta,
        reference: v.numeric(),
        reference_bound: v.truncation.map_or(0.0, |t| t.tail_bound),
        exact_reference: false,
    })
}

/// Quadrature of the generating function against the series at real `s > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct MellinReport {
    pub s: f64,
    /// `(1/Gamma(s)) int_0^inf t^{s-1} F(-t) dt`.
    pub transform: f64,
    pub quadrature_error: f64,
    /// Bound on the neglected `int_T^inf`, already divided by `Gamma(s)`.
    pub tail_bound: f64,
    pub cutoff: f64,
    pub gamma: f64,
    pub series: ComplexVal,
    /// `F(0) = 2^r / prod (1 + q^{w_j})`.
    pub f_at_zero: f64,
    /// `F(-t0)` at `t0 = 1e-8`, which should sit on the `F(0)` asymptote.
    pub f_near_zero: f64,
}

impl MellinReport {
    pub fn abs_error(&self) -> f64 {
        (self.transform - self.series.re).abs() + self.series.im.abs()
    }

    pub fn rel_error(&self) -> f64 {
        self.abs_error() / self.series.re.abs().max(1.0)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.rel_error() <= tol
    }
}

/// `F(-t, x | w) = 2^r e^{-xt} / prod_j (1 + q^{w_j} e^{-w_j t})`.
pub fn generating_function_at(t: f64, params: &ZetaParams) -> f64 {
    let r = params.order() as i32;
    params
        .w
        .iter()
        .fold(2f64.powi(r) * (-params.x * t).exp(), |acc, &w| acc / (1.0 + params.q.powf(w) * (-w * t).exp()))
}

pub fn check_mellin(s: f64, params: &ZetaParams) -> Result<MellinReport> {
    params.validate()?;
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::Unsupported(format!("the Mellin check needs real s > 0, got {s}")));
    }
    if params.chi.is_some() {
        return Err(Error::Unsupported("the Mellin check covers the zeta function only".into()));
    }
    let g = gamma(s);
    let r = params.order() as i32;
    let x = params.x;
    // F(-t) <= 2^r e^{-xt}, so the tail past T is at most 2^r Gamma(s, xT) / x^s.
    let tail_over_gamma = |t: f64| 2f64.powi(r) * gamma_ur(s, x * t) / x.powf(s);
    let mut cutoff = 2.0;
    while tail_over_gamma(cutoff) > 1e-13 {
        cutoff *= 2.0;
        if cutoff > 1e6 {
            return Err(Error::Divergent("no finite quadrature cutoff found".into()));
        }
    }
    let quad_tol = 1e-10 * g.max(1.0);
    // On [0, 1] substitute t = u^{1/s}: t^{s-1} dt = du / s.
    let head =
        integrate(|u: f64| generating_function_at(u.powf(1.0 / s), params) / s, 0.0, 1.0, quad_tol, 4000)?;
    let body =
        integrate(|t: f64| t.powf(s - 1.0) * generating_function_at(t, params), 1.0, cutoff, quad_tol, 4000)?;
    let series = zeta_qr(Complex64::new(s, 0.0), params)?;
    Ok(MellinReport {
        s,
        transform: (head.value + body.value) / g,
        quadrature_error: (head.error + body.error) / g,
        tail_bound: tail_over_gamma(cutoff),
        cutoff,
        gamma: g,
        series,
        f_at_zero: generating_function_at(0.0, params),
        f_near_zero: generating_function_at(1e-8, params),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::real_nontrivial;

    fn real(v: f64) -> Complex64 {
        Complex64::new(v, 0.0)
    }

    #[test]
    fn geometric_values_at_zero() {
        let p = ZetaParams::new(0.5, 1.0, vec![1.0]);
        let v = zeta_qr(real(0.0), &p).unwrap();
        assert!((v.re - 4.0 / 3.0).abs() < 1e-12);
        assert!(v.err_bound <= 1e-12);
        let p = ZetaParams::new(1.0 / 3.0, 0.7, vec![1.0, 1.0]);
        assert!((zeta_qr(real(0.0), &p).unwrap().re - 2.25).abs() < 1e-12);
    }

    #[test]
    fn character_mod_3_closed_form() {
        let chi = real_nontrivial(3).unwrap().remove(0);
        let q: f64 = 0.5;
        let p = ZetaParams::new(q, 1.0, vec![1.0]).with_chi(chi.clone());
        let v = l_qr(real(0.0), &p).unwrap();
        // residues 1, 2 repeat with period 3 and factor (-q)^3
        let closed = 2.0 * (-q * chi.eval(1).re + q * q * chi.eval(2).re) / (1.0 + q.powi(3));
        assert!((v.re - closed).abs() < 1e-12, "{} vs {closed}", v.re);
    }

    #[test]
    fn trivial_character_matches_zeta() {
        let chi = DirichletCharacter::principal(1).unwrap();
        let p = ZetaParams::new(0.4, 1.5, vec![1.0, 2.0]);
        for s in [real(-2.0), real(0.5), Complex64::new(2.0, 1.0)] {
            let a = zeta_qr(s, &p).unwrap();
            let b = l_qr(s, &p.clone().with_chi(chi.clone())).unwrap();
            assert!((a.value() - b.value()).norm() < 1e-12);
        }
    }

    #[test]
    fn negative_integer_matches_polynomial() {
        let p = ZetaParams::new(0.5, 1.0, vec![1.0]);
        let rep = check_interpolation(1, &p).unwrap();
        assert!(rep.exact_reference);
        assert!(rep.passes(1e-10), "{rep:?}");
    }

    #[test]
    fn preconditions() {
        let p = ZetaParams::new(1.5, 1.0, vec![1.0]);
        assert!(matches!(zeta_qr(real(1.0), &p), Err(Error::Divergent(_))));
        let p = ZetaParams::new(0.5, 0.0, vec![1.0]);
        assert!(matches!(zeta_qr(real(1.0), &p), Err(Error::Domain(_))));
        let p = ZetaParams::new(0.5, 1.0, vec![1.0]);
        assert!(matches!(l_qr(real(1.0), &p), Err(Error::Usage(_))));
        assert!(matches!(check_mellin(0.0, &p), Err(Error::Unsupported(_))));
    }

    #[test]
    fn mellin_at_one() {
        let p = ZetaParams::new(0.5, 1.0, vec![1.0]);
        let rep = check_mellin(1.0, &p).unwrap();
        assert!(rep.passes(1e-8), "{rep:?}");
        assert!((rep.f_near_zero / rep.f_at_zero - 1.0).abs() < 1e-6);
    }
}
