//! Direct summation of the explicit series for each family (numeric path).

use num_complex::Complex64;

use super::spec::{EvalPath, FamilyKind, NumericFamilySpec, PolyValue, TruncationReport, Value};
use crate::error::{Error, Result};
use crate::multisum::{Axis, Coef, Growth, MultiSum, Point};

/// Which displayed form of the series to sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesForm {
    /// Nested sum over `(m_1, ..., m_r)`.
    MultiIndex,
    /// Regrouped sum over one index with binomial or q-binomial weights.
    SingleIndex,
}

/// Sums the family's series for `E_n(x)` with absolute truncation tolerance `tol`.
///
/// Requires `0 < q < 1`. For the `(h, r)` family with `h <= r` some indices
/// have ratio `q^{h-j} >= 1`; those are summed in the Abel sense (see
/// [`crate::multisum`]), which yields the generating-function value.
pub fn series_sum(spec: &NumericFamilySpec, n: usize, form: SeriesForm, tol: f64) -> Result<PolyValue> {
    spec.validate()?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Usage("tolerance must be positive".into()));
    }
    if matches!(spec.kind, FamilyKind::BarnesBernoulli | FamilyKind::ClassicalBarnesEuler) {
        return Err(Error::Divergent(format!(
            "family {} has no convergent series representation",
            spec.kind
        )));
    }
    if !(spec.q > 0.0 && spec.q < 1.0) {
        return Err(Error::Divergent(format!("series needs 0 < q < 1, got q = {}", spec.q)));
    }

    let parts = match form {
        SeriesForm::MultiIndex => vec![multi_index(spec)],
        SeriesForm::SingleIndex => single_index(spec)?,
    };
    let growth_base = spec.x.abs();
    let mut value = Complex64::new(0.0, 0.0);
    let mut tail = 0.0;
    let mut terms = 0;
    let mut cutoffs = Vec::new();
    let part_tol = tol / parts.len() as f64;
    let x = spec.x;
    for part in &parts {
        let growth = Growth { degree: n as f64, base: growth_base, constant: 1.0 };
        let r =
            part.evaluate(&growth, part_tol, n as u64 + 10, |u| Complex64::new((x + u).powi(n as i32), 0.0))?;
        value += r.value;
        tail += r.tail_bound;
        terms += r.terms;
        if cutoffs.is_empty() {
            cutoffs = r.cutoffs;
        } else {
            for (c, rc) in cutoffs.iter_mut().zip(r.cutoffs) {
                *c = (*c).max(rc);
            }
        }
    }
    Ok(PolyValue {
        n,
        value: Value::Numeric(value),
        path: EvalPath::SeriesSum,
        truncation: Some(TruncationReport { terms, cutoffs, tail_bound: tail }),
    })
}

fn two_pow(r: usize) -> f64 {
    2f64.powi(r as i32)
}

fn multi_index(spec: &NumericFamilySpec) -> MultiSum {
    let q = spec.q;
    let axes = (0..spec.r)
        .map(|j| {
            let (ratio, scale) = match spec.kind {
                FamilyKind::QEulerOrderR | FamilyKind::ChiQEuler | FamilyKind::ChiQEulerOrderR => (q, 1.0),
                FamilyKind::QEulerHR => (q.powi((spec.h - j as i64 - 1) as i32), 1.0),
                FamilyKind::BarnesQEuler => (q.powf(spec.weights[j]), spec.weights[j]),
                FamilyKind::BarnesQEulerTwist | FamilyKind::ChiBarnesQEuler => {
                    (q.powf(spec.twists[j]), spec.weights[j])
                }
                FamilyKind::BarnesBernoulli | FamilyKind::ClassicalBarnesEuler => unreachable!(),
            };
            Axis::Geometric { ratio, scale, chi: spec.chi.clone(), coef: Coef::One }
        })
        .collect();
    MultiSum { prefactor: two_pow(spec.r), axes }
}

fn single_index(spec: &NumericFamilySpec) -> Result<Vec<MultiSum>> {
    let q = spec.q;
    let r = spec.r;
    match spec.kind {
        FamilyKind::QEulerOrderR => Ok(vec![binomial_form(q, 1.0, r)]),
        FamilyKind::BarnesQEuler => {
            let w0 = spec.weights[0];
            if spec.weights.iter().any(|&w| w != w0) {
                return Err(Error::Unsupported("single-index form needs equal weights".into()));
            }
            Ok(vec![binomial_form(q.powf(w0), w0, r)])
        }
        FamilyKind::QEulerHR => Ok(q_binomial_form(q, spec.h, r)),
        FamilyKind::ChiQEuler | FamilyKind::ChiQEulerOrderR => {
            let chi = spec.chi.as_ref().expect("validated");
            let f = chi.conductor() as usize;
            // Distribution of a_1 + ... + a_r with weight prod chi(a_j) (-q)^{a_j}.
            let mut dist = vec![Complex64::new(1.0, 0.0)];
            for _ in 0..r {
                let mut next = vec![Complex64::new(0.0, 0.0); dist.len() + f - 1];
                for (s, &d) in dist.iter().enumerate() {
                    for a in 0..f {
                        next[s + a] += d * chi.eval(a as i64) * (-q).powi(a as i32);
                    }
                }
                dist = next;
            }
            let inner =
                dist.into_iter().enumerate().map(|(s, w)| Point { offset: s as f64, weight: w }).collect();
            Ok(vec![MultiSum {
                prefactor: two_pow(r),
                axes: vec![
                    Axis::Geometric {
                        ratio: q.powi(f as i32),
                        scale: f as f64,
                        chi: None,
                        coef: Coef::Binomial { r },
                    },
                    Axis::Finite(inner),
                ],
            }])
        }
        FamilyKind::BarnesQEulerTwist | FamilyKind::ChiBarnesQEuler => {
            Err(Error::Unsupported(format!("family {} has no single-index form", spec.kind)))
        }
        FamilyKind::BarnesBernoulli | FamilyKind::ClassicalBarnesEuler => unreachable!(),
    }
}

/// `2^r sum_m C(m+r-1, m) (-y)^m (x + scale m)^n`
fn binomial_form(ratio: f64, scale: f64, r: usize) -> MultiSum {
    MultiSum {
        prefactor: two_pow(r),
        axes: vec![Axis::Geometric { ratio, scale, chi: None, coef: Coef::Binomial { r } }],
    }
}

/// `2^r sum_m [m+r-1 choose m]_q (-q^{h-r})^m (x + m)^n`.
///
/// For `h > r` the q-binomial weights are used directly. Otherwise the
/// q-binomial is expanded as `prod_{i<r} (1 - q^i q^m)/(1 - q^i)`, a
/// combination of `q^{km}`, and each geometric component is summed on its own
/// axis (regularized where `h - r + k <= 0`).
fn q_binomial_form(q: f64, h: i64, r: usize) -> Vec<MultiSum> {
    if h > r as i64 {
        return vec![MultiSum {
            prefactor: two_pow(r),
            axes: vec![Axis::Geometric {
                ratio: q.powi((h - r as i64) as i32),
                scale: 1.0,
                chi: None,
                coef: Coef::QBinomial { q, r },
            }],
        }];
    }
    let norm: f64 = (1..r).map(|i| 1.0 - q.powi(i as i32)).product();
    // prod_{i=1}^{r-1} (1 - q^i z) = sum_k c_k z^k
    let mut c = vec![1.0];
    for i in 1..r {
        let qi = q.powi(i as i32);
        let mut next = vec![0.0; c.len() + 1];
        for (k, &ck) in c.iter().enumerate() {
            next[k] += ck;
            next[k + 1] -= ck * qi;
        }
        c = next;
    }
    c.into_iter()
        .enumerate()
        .map(|(k, ck)| MultiSum {
            prefactor: two_pow(r) * ck / norm,
            axes: vec![Axis::geometric(q.powi((h - r as i64 + k as i64) as i32), 1.0)],
        })
        .collect()
}
