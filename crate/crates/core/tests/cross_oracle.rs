use num_complex::Complex64;

use qeuler_core::dirichlet::{enumerate_characters, real_nontrivial};
use qeuler_core::families::{binomial_shift_in_x, check_difference_identity, gf_value, series_sum};
use qeuler_core::qzeta::{evaluate_scaled, l_qr, zeta_qr, ZetaParams};
use qeuler_core::rational::{int, ratio, to_f64};
use qeuler_core::{FamilySpec, SeriesForm};

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

fn s(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn barnes_and_twisted_series_match_expansion() {
    let q = ratio(1, 2);
    let specs = [
        FamilySpec::barnes(q.clone(), int(1), vec![1, 2]),
        FamilySpec::barnes(q.clone(), ratio(5, 2), vec![1, 1, 2]),
        FamilySpec::barnes_twist(q.clone(), int(0), vec![1, 2], vec![2, 1]),
        FamilySpec::q_euler_hr(q.clone(), int(1), 1, 3),
    ];
    for spec in &specs {
        for n in 0..=6 {
            let want = to_f64(&gf_value(spec, n).unwrap());
            let got = series_sum(&spec.to_numeric(), n, SeriesForm::MultiIndex, 1e-12).unwrap();
            assert!(close(got.numeric().re, want, 1e-9), "{:?} n={n}", spec.kind);
        }
    }
}

#[test]
fn character_series_match_expansion() {
    for f in [3, 5] {
        for chi in real_nontrivial(f).unwrap() {
            let spec = FamilySpec::chi_q_euler_order(ratio(1, 3), int(1), 2, chi.clone());
            for n in 0..=5 {
                let want = to_f64(&gf_value(&spec, n).unwrap());
                for form in [SeriesForm::MultiIndex, SeriesForm::SingleIndex] {
                    let got = series_sum(&spec.to_numeric(), n, form, 1e-12).unwrap().numeric().re;
                    assert!(close(got, want, 1e-9), "f={f} n={n} {form:?}");
                }
            }
        }
    }
}

#[test]
fn binomial_shift_holds_for_every_family() {
    let q = ratio(1, 3);
    let chi = real_nontrivial(5).unwrap().remove(0);
    let specs = [
        FamilySpec::q_euler(q.clone(), ratio(3, 2), 2),
        FamilySpec::q_euler_hr(q.clone(), int(2), 3, 2),
        FamilySpec::barnes(q.clone(), ratio(1, 3), vec![1, 3]),
        FamilySpec::chi_barnes(q.clone(), int(1), vec![1, 2], vec![2, 2], chi),
        FamilySpec::barnes_bernoulli(ratio(1, 2), vec![1, 2]),
    ];
    for spec in &specs {
        for n in 0..=6 {
            assert!(binomial_shift_in_x(spec, n).unwrap().holds(), "{:?} n={n}", spec.kind);
        }
    }
}

#[test]
fn difference_identity_for_real_characters() {
    for f in [3, 5, 7] {
        for chi in real_nontrivial(f).unwrap() {
            for m in 0..=4 {
                for n in 1..=3 {
                    let c = check_difference_identity(&chi, &ratio(1, 2), m, n).unwrap();
                    assert!(c.holds(), "{}", c.summary());
                }
            }
        }
    }
}

#[test]
fn zeta_at_negative_one_is_first_polynomial() {
    let p = ZetaParams::new(0.5, 1.0, vec![1.0]);
    let want = to_f64(&gf_value(&FamilySpec::q_euler(ratio(1, 2), int(1), 1), 1).unwrap());
    let got = zeta_qr(s(-1.0, 0.0), &p).unwrap();
    assert!((got.re - want).abs() <= 1e-11);
}

#[test]
fn l_function_at_minus_two_matches_series() {
    let chi = real_nontrivial(3).unwrap().remove(0);
    let p = ZetaParams::new(1.0 / 3.0, 1.0, vec![1.0]).with_chi(chi.clone());
    let want = series_sum(
        &FamilySpec::chi_q_euler(ratio(1, 3), int(1), chi).to_numeric(),
        2,
        SeriesForm::MultiIndex,
        1e-13,
    )
    .unwrap()
    .numeric()
    .re;
    assert!((l_qr(s(-2.0, 0.0), &p).unwrap().re - want).abs() <= 1e-11);
}

#[test]
fn error_bound_covers_drift_when_cutoffs_double() {
    let grid = [s(-3.0, 0.0), s(-2.0, 0.0), s(-1.0, 0.0), s(0.0, 0.0), s(0.5, 0.0), s(1.0, 0.0), s(2.0, 1.0)];
    let chi = enumerate_characters(5).unwrap().remove(1);
    let params = [
        ZetaParams::new(0.5, 1.0, vec![1.0]).with_tol(1e-6),
        ZetaParams::new(0.8, 0.5, vec![1.0, 2.0]).with_tol(1e-6),
        ZetaParams::new(0.7, 2.0, vec![1.5]).with_chi(chi).with_tol(1e-6),
    ];
    for p in &params {
        for &point in &grid {
            let base = evaluate_scaled(point, p, 1).unwrap();
            let fine = evaluate_scaled(point, p, 2).unwrap();
            let drift = (base.value.value() - fine.value.value()).norm();
            assert!(drift <= base.value.err_bound, "s={point} drift {drift:e} > {:e}", base.value.err_bound);
            assert!(base.value.err_bound <= p.tol * 1.01, "bound above tolerance");
        }
    }
}

#[test]
fn zeta_is_symmetric_in_weights() {
    let a = ZetaParams::new(0.6, 1.25, vec![1.0, 2.0, 0.5]).with_tol(1e-10);
    let b = ZetaParams { w: vec![0.5, 1.0, 2.0], ..a.clone() };
    for point in [s(-2.0, 0.0), s(0.5, 0.0), s(2.0, 1.0)] {
        let (va, vb) = (zeta_qr(point, &a).unwrap(), zeta_qr(point, &b).unwrap());
        assert!((va.value() - vb.value()).norm() <= 2.0 * a.tol);
    }
}

#[test]
fn pairwise_regrouping_for_order_one() {
    let (q, x) = (0.5f64, 1.5f64);
    let p = ZetaParams::new(q, x, vec![1.0]).with_tol(1e-12);
    for point in [s(-2.0, 0.0), s(0.5, 0.0), s(2.0, 1.0)] {
        let mut acc = Complex64::new(0.0, 0.0);
        for m in (0..200).step_by(2) {
            let a = (-point * (x + m as f64).ln()).exp();
            let b = (-point * (x + m as f64 + 1.0).ln()).exp();
            acc += q.powi(m) * (a - q * b);
        }
        acc *= 2.0;
        assert!((zeta_qr(point, &p).unwrap().value() - acc).norm() <= 1e-10);
    }
}
