//! Exact identity checks relating the families to each other.

use num_traits::{One, Zero};

use super::gf::{gf_expand, gf_value};
use super::spec::{FamilyKind, FamilySpec};
use crate::combinat::binom;
use crate::dirichlet::DirichletCharacter;
use crate::error::{Error, Result};
use crate::rational::{int, pow, Rational};
use crate::report::ExactCheck;

/// All tuples in `[0, f)^r`.
fn tuples(f: i64, r: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..f).map(move |a| {
                    let mut t = t.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
    }
    out
}

/// Distribution relation expressing `E_n(x)` through the same family at `q^f`.
///
/// With `m_j = a_j + f k_j` (`f` odd) every family with generating function
/// `prod_j sum_m c_j(m) (-1)^m y_j^m e^{w_j m t} * e^{xt}` satisfies
///
/// ```text
/// E_n(x) = f^n sum_{a in [0,f)^r} prod_j c_j(a_j) (-1)^{a_j} y_j^{a_j}
///          * E'_{n}((x + sum_j w_j a_j) / f)
/// ```
///
/// where `E'` is the untwisted family at `q^f` (characters drop out because
/// they are `f`-periodic). For the character families `f` must be a
/// multiple of the conductor.
pub fn check_distribution(spec: &FamilySpec, f: u64, n: usize) -> Result<ExactCheck> {
    spec.validate()?;
    if f == 0 || f.is_multiple_of(2) {
        return Err(Error::Usage(format!("distribution relation needs odd f >= 1, got {f}")));
    }
    let fi = f as i64;
    let q = &spec.q;
    let qf = pow(q, fi)?;
    let r = spec.r;

    // Per-index (weight, q-exponent) and the family evaluated on the right.
    let (weights, exponents, right): (Vec<i64>, Vec<i64>, FamilySpec) = match spec.kind {
        FamilyKind::QEulerOrderR => (vec![1; r], vec![1; r], spec.with_q(qf)),
        FamilyKind::QEulerHR => (vec![1; r], (1..=r as i64).map(|j| spec.h - j).collect(), spec.with_q(qf)),
        FamilyKind::BarnesQEuler => (spec.weights.clone(), spec.weights.clone(), spec.with_q(qf)),
        FamilyKind::ClassicalBarnesEuler => (spec.weights.clone(), vec![0; r], spec.clone()),
        FamilyKind::BarnesQEulerTwist => (spec.weights.clone(), spec.twists.clone(), spec.with_q(qf)),
        FamilyKind::ChiQEuler | FamilyKind::ChiQEulerOrderR => {
            (vec![1; r], vec![1; r], FamilySpec::q_euler(qf, spec.x.clone(), r))
        }
        FamilyKind::ChiBarnesQEuler => (
            spec.weights.clone(),
            spec.twists.clone(),
            FamilySpec::barnes_twist(qf, spec.x.clone(), spec.weights.clone(), spec.twists.clone()),
        ),
        FamilyKind::BarnesBernoulli => {
            return Err(Error::Unsupported(
                "no alternating distribution relation for Bernoulli polynomials".into(),
            ))
        }
    };

    let chi: Option<&DirichletCharacter> = spec.chi.as_ref();
    if let Some(chi) = chi {
        if !f.is_multiple_of(chi.conductor()) {
            return Err(Error::Usage(format!(
                "f = {f} must be a multiple of the conductor {}",
                chi.conductor()
            )));
        }
        if !chi.is_real() {
            return Err(Error::Path("exact distribution check needs a real character".into()));
        }
    }

    let lhs = gf_value(spec, n)?;
    let fn_pow = pow(&int(fi), n as i64)?;
    // E'_n(y) = sum_k C(n,k) y^{n-k} E'_k(0), expanded once for all shifts.
    let at_zero = gf_expand(&right.with_x(int(0)), n)?;
    let mut rhs = Rational::zero();
    for a in tuples(fi, r) {
        let mut coef = Rational::one();
        let mut shift = Rational::zero();
        for j in 0..r {
            if let Some(chi) = chi {
                let c = chi.eval_exact(a[j]).expect("real character");
                if c == 0 {
                    coef = Rational::zero();
                    break;
                }
                coef *= int(c as i64);
            }
            if a[j] % 2 == 1 {
                coef = -coef;
            }
            coef *= pow(q, exponents[j] * a[j])?;
            shift += int(weights[j] * a[j]);
        }
        if coef.is_zero() {
            continue;
        }
        let arg = (&spec.x + shift) / int(fi);
        let value: Rational = at_zero
            .iter()
            .enumerate()
            .map(|(k, ek)| binom(n as i64, k as u64) * pow(&arg, (n - k) as i64).expect("y^k") * ek)
            .sum();
        rhs += coef * value;
    }
    Ok(ExactCheck::new(format!("distribution[{} f={f} n={n}]", spec.kind), lhs, fn_pow * rhs))
}

/// `q^{nf} E_{m,chi,q}(nf) - (-1)^n E_{m,chi,q}(0) = 2 sum_{l<nf} (-1)^{n-1-l} chi(l) q^l l^m`.
pub fn check_difference_identity(
    chi: &DirichletCharacter,
    q: &Rational,
    m: usize,
    n: u64,
) -> Result<ExactCheck> {
    if !chi.is_real() {
        return Err(Error::Path("exact difference identity needs a real character".into()));
    }
    let f = chi.conductor() as i64;
    let nf = n as i64 * f;
    let at_zero = FamilySpec::chi_q_euler(q.clone(), int(0), chi.clone());
    let e_nf = gf_value(&at_zero.with_x(int(nf)), m)?;
    let e_0 = gf_value(&at_zero, m)?;
    let sign_n = if n.is_multiple_of(2) { int(1) } else { int(-1) };
    let lhs = pow(q, nf)? * e_nf - sign_n * e_0;

    let mut rhs = Rational::zero();
    for l in 0..nf {
        let c = chi.eval_exact(l).expect("real character");
        if c == 0 {
            continue;
        }
        let sign = if (n as i64 - 1 - l).rem_euclid(2) == 0 { 1 } else { -1 };
        rhs += int(sign * c as i64) * pow(q, l)? * pow(&int(l), m as i64)?;
    }
    rhs *= int(2);
    Ok(ExactCheck::new(format!("difference[f={f} m={m} n={n}]"), lhs, rhs))
}

/// `B_n(w + a_{N+1}, N+1 | a) - B_n(w, N+1 | a) = n B_{n-1}(w, N | a_1..a_N)`,
/// with `B_k(w, 0 | ) = w^k`.
pub fn check_bernoulli_difference(n: usize, big_n: usize, a: &[i64], w: &Rational) -> Result<ExactCheck> {
    if n == 0 {
        return Err(Error::Usage("bernoulli difference needs n >= 1".into()));
    }
    if a.len() != big_n + 1 {
        return Err(Error::Usage(format!("expected {} weights, got {}", big_n + 1, a.len())));
    }
    let full = FamilySpec::barnes_bernoulli(w.clone(), a.to_vec());
    let shifted = full.with_x(w + int(a[big_n]));
    let lhs = gf_value(&shifted, n)? - gf_value(&full, n)?;
    let lower = if big_n == 0 {
        pow(w, n as i64 - 1)?
    } else {
        gf_value(&FamilySpec::barnes_bernoulli(w.clone(), a[..big_n].to_vec()), n - 1)?
    };
    Ok(ExactCheck::new(format!("bernoulli-difference[N={big_n} n={n} a={a:?}]"), lhs, int(n as i64) * lower))
}

/// `E_n(x) = sum_k C(n,k) x^{n-k} E_k(0)`.
pub fn binomial_shift_in_x(spec: &FamilySpec, n: usize) -> Result<ExactCheck> {
    let lhs = gf_value(spec, n)?;
    let at_zero = gf_expand(&spec.with_x(int(0)), n)?;
    let rhs = at_zero
        .iter()
        .enumerate()
        .map(|(k, ek)| binom(n as i64, k as u64) * pow(&spec.x, (n - k) as i64).expect("x^k") * ek)
        .sum();
    Ok(ExactCheck::new(format!("binomial-shift[{} n={n}]", spec.kind), lhs, rhs))
}

fn compare_all(name: &str, a: &FamilySpec, b: &FamilySpec, order: usize) -> Result<Vec<ExactCheck>> {
    let ea = gf_expand(a, order)?;
    let eb = gf_expand(b, order)?;
    Ok(ea
        .into_iter()
        .zip(eb)
        .enumerate()
        .map(|(n, (l, r))| ExactCheck::new(format!("{name}[n={n}]"), l, r))
        .collect())
}

/// The exact reductions between families for `E_0..E_order`:
///
/// 1. Barnes with unit weights equals the order-`r` q-Euler family.
/// 2. Twisted Barnes with `a = w` equals Barnes.
/// 3. The `(h, r)` family at `r = 1, h = 2` equals the order-1 q-Euler family
///    (the denominator `1 + q^{h-1} e^t` becomes `1 + q e^t`).
/// 4. Classical Barnes equals Barnes at `q = 1`.
/// 5. The character family with the conductor-1 character equals the order-`r` q-Euler family.
pub fn specialization_checks(
    q: &Rational,
    x: &Rational,
    r: usize,
    weights: &[i64],
    order: usize,
) -> Result<Vec<ExactCheck>> {
    let mut out = Vec::new();
    out.extend(compare_all(
        "barnes(1..1)=qeuler",
        &FamilySpec::barnes(q.clone(), x.clone(), vec![1; r]),
        &FamilySpec::q_euler(q.clone(), x.clone(), r),
        order,
    )?);
    out.extend(compare_all(
        "twist(a=w)=barnes",
        &FamilySpec::barnes_twist(q.clone(), x.clone(), weights.to_vec(), weights.to_vec()),
        &FamilySpec::barnes(q.clone(), x.clone(), weights.to_vec()),
        order,
    )?);
    out.extend(compare_all(
        "hr(h=2,r=1)=qeuler(r=1)",
        &FamilySpec::q_euler_hr(q.clone(), x.clone(), 2, 1),
        &FamilySpec::q_euler(q.clone(), x.clone(), 1),
        order,
    )?);
    out.extend(compare_all(
        "classical=barnes(q=1)",
        &FamilySpec::classical_barnes(x.clone(), weights.to_vec()),
        &FamilySpec::barnes(int(1), x.clone(), weights.to_vec()),
        order,
    )?);
    out.extend(compare_all(
        "chi(f=1)=qeuler",
        &FamilySpec::chi_q_euler_order(q.clone(), x.clone(), r, DirichletCharacter::principal(1)?),
        &FamilySpec::q_euler(q.clone(), x.clone(), r),
        order,
    )?);
    Ok(out)
}
