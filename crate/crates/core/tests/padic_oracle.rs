use num_traits::Zero;

use qeuler_core::padic::{
    check_q_limit, fermionic_sum, fermionic_sum_multi, level_stability, oracle_convergence, IntegrandPoly,
    PadicInt,
};
use qeuler_core::rational::{int, pow, ratio, Rational};
use qeuler_core::{Error, FamilySpec};

/// Nested loop over every `y` in `[0, p^N)^r`.
fn brute_force(f: &IntegrandPoly, q: &Rational, p: u64, level: u32, precision: u32) -> PadicInt {
    let r = f.exponents.len();
    let size = p.pow(level) as i64;
    let mut total = Rational::zero();
    let mut y = vec![0i64; r];
    loop {
        let s: i64 = y.iter().sum();
        let e: i64 = y.iter().zip(&f.exponents).map(|(y, e)| y * e).sum();
        let mut poly = Rational::zero();
        for c in f.coeffs.iter().rev() {
            poly = poly * int(s) + c;
        }
        let sign = if s % 2 == 0 { int(1) } else { int(-1) };
        total += sign * pow(q, s).unwrap() * pow(&f.base, e).unwrap() * poly;
        let mut j = 0;
        while j < r {
            y[j] += 1;
            if y[j] < size {
                break;
            }
            y[j] = 0;
            j += 1;
        }
        if j == r {
            break;
        }
    }
    let qn = pow(q, size).unwrap();
    let pref = pow(&((int(1) + q) / (int(1) + qn)), r as i64).unwrap();
    PadicInt::from_rational(&(pref * total), p, precision).unwrap()
}

#[test]
fn moment_convolution_matches_nested_loops() {
    let cases = [
        (IntegrandPoly::power(3), int(1), 3u64, 3u32),
        (IntegrandPoly::shifted_power(&ratio(1, 2), 2).with_weight(int(4), vec![1, 2]), int(1), 3, 2),
        (IntegrandPoly::power(2).with_weight(int(6), vec![1, 0, -1]), int(1), 5, 1),
        (IntegrandPoly::power(2).with_weight(int(4), vec![2, 1]), int(7), 3, 2),
    ];
    for (f, q, p, level) in &cases {
        let r = f.exponents.len();
        let fast = fermionic_sum_multi(f, q, r, *p, *level, 8).unwrap();
        assert_eq!(fast, brute_force(f, q, *p, *level, 8), "{f:?}");
    }
}

#[test]
fn hr_family_converges_to_expansion() {
    let spec = FamilySpec::q_euler_hr(int(4), int(1), 3, 2);
    for n in 0..=3 {
        let rep = oracle_convergence(&spec, n, 3, 3..=7, 8).unwrap();
        assert!(rep.monotone());
        assert!(rep.min_margin(2) >= 0, "{rep:?}");
    }
}

#[test]
fn consecutive_levels_agree_more_closely() {
    let f = IntegrandPoly::shifted_power(&int(1), 3).with_weight(int(6), vec![1]);
    let rep = level_stability(&f, &int(1), 5, 2..=5, 8).unwrap();
    assert!(rep.monotone());
    assert!(rep.rows.last().unwrap().valuation >= 5);
}

#[test]
fn q_limit_valuation_grows_with_k() {
    let f = IntegrandPoly::power(2);
    let vals: Vec<u32> = (1..=5).map(|k| check_q_limit(&f, 3, k, 5, 8).unwrap().valuation()).collect();
    assert!(vals.windows(2).all(|w| w[0] <= w[1]), "{vals:?}");
    assert!(vals[4] > vals[0]);
}

#[test]
fn reduction_of_non_integral_values_fails() {
    let f = IntegrandPoly::polynomial(vec![ratio(1, 3)]);
    assert!(matches!(fermionic_sum(&f, &int(1), 3, 2, 4), Err(Error::Reduction(_))));
}
