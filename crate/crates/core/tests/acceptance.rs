//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_traits::{One, Zero};

use qeuler_core::dirichlet::{enumerate_characters, real_nontrivial, totient};
use qeuler_core::families::{
    check_bernoulli_difference, check_distribution, gf_expand, series_sum, specialization_checks,
};
use qeuler_core::padic::{check_q_limit, check_shift_identity, oracle_convergence, IntegrandPoly};
use qeuler_core::qzeta::{check_interpolation, check_mellin, ZetaParams};
use qeuler_core::rational::{int, ratio, to_f64, Rational};
use qeuler_core::{FamilySpec, SeriesForm};

const QS: [(i64, i64); 2] = [(1, 3), (1, 2)];
const SERIES_TOL: f64 = 1e-12;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

/// Euler numbers from `(e^t + 1) g(t) = 2`, solved coefficient by coefficient.
fn classical_euler_oracle(n: usize) -> Vec<Rational> {
    let mut fact = vec![Rational::one()];
    for k in 1..=n {
        fact.push(&fact[k - 1] / int(k as i64));
    }
    // e^t + 1 = 2 + sum_{k>=1} t^k / k!
    let mut g: Vec<Rational> = Vec::new();
    for k in 0..=n {
        let rhs = if k == 0 { int(2) } else { Rational::zero() };
        let mut acc = rhs;
        for j in 1..=k {
            acc -= &fact[j] * &g[k - j];
        }
        g.push(acc / int(2));
    }
    g.into_iter().enumerate().map(|(k, c)| c / &fact[k]).collect()
}

fn criterion_1() -> Outcome {
    let spec = FamilySpec::q_euler(int(1), int(0), 1);
    let got = gf_expand(&spec, 10).expect("expansion");
    let want = classical_euler_oracle(10);
    let bad = got.iter().zip(&want).filter(|(a, b)| a != b).count();
    outcome(bad == 0 && got.len() == 11, format!("n=0..10, {bad} mismatches"))
}

fn criterion_2() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for (a, b) in QS {
        for r in 1..=3 {
            for x in [int(0), int(1), ratio(5, 2)] {
                let spec = FamilySpec::q_euler(ratio(a, b), x, r);
                let exact = gf_expand(&spec, 8).expect("expansion");
                let num = spec.to_numeric();
                for (n, e) in exact.iter().enumerate() {
                    let e = to_f64(e);
                    for form in [SeriesForm::MultiIndex, SeriesForm::SingleIndex] {
                        let v = series_sum(&num, n, form, SERIES_TOL).expect("series").numeric().re;
                        worst = worst.max(rel(v, e));
                        count += 1;
                    }
                }
            }
        }
    }
    outcome(worst <= 1e-9, format!("{count} comparisons, worst rel err {worst:.2e} (tol 1e-9)"))
}

fn criterion_3() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for (a, b) in QS {
        for h in 1..=3 {
            for r in 1..=3 {
                for x in [int(0), int(1)] {
                    let num = FamilySpec::q_euler_hr(ratio(a, b), x, h, r).to_numeric();
                    for n in 0..=6 {
                        let m = series_sum(&num, n, SeriesForm::MultiIndex, SERIES_TOL).expect("multi");
                        let s = series_sum(&num, n, SeriesForm::SingleIndex, SERIES_TOL).expect("single");
                        worst = worst.max(rel(m.numeric().re, s.numeric().re));
                        count += 1;
                    }
                }
            }
        }
    }
    outcome(worst <= 1e-9, format!("{count} comparisons, worst rel err {worst:.2e} (tol 1e-9)"))
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    let mut failed = Vec::new();
    let mut specs = Vec::new();
    for (a, b) in QS {
        let q = ratio(a, b);
        for x in [int(0), int(1), ratio(5, 2)] {
            for r in 1..=3 {
                specs.push(FamilySpec::q_euler(q.clone(), x.clone(), r));
                for h in 1..=3 {
                    specs.push(FamilySpec::q_euler_hr(q.clone(), x.clone(), h, r));
                }
            }
            for f in [3, 5] {
                for chi in real_nontrivial(f).expect("characters") {
                    specs.push(FamilySpec::chi_q_euler(q.clone(), x.clone(), chi.clone()));
                    specs.push(FamilySpec::chi_q_euler_order(q.clone(), x.clone(), 2, chi));
                }
            }
        }
    }
    for spec in &specs {
        for f in [1u64, 3, 5] {
            if let Some(chi) = &spec.chi {
                if f % chi.conductor() != 0 {
                    continue;
                }
            }
            for n in 0..=5 {
                let c = check_distribution(spec, f, n).expect("distribution");
                checked += 1;
                if !c.holds() {
                    failed.push(c.summary());
                }
            }
        }
    }
    let detail = match failed.first() {
        None => format!("{checked} exact equalities"),
        Some(s) => format!("{} of {checked} failed, first: {s}", failed.len()),
    };
    outcome(failed.is_empty(), detail)
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    let mut failed = Vec::new();
    for (a, b) in QS {
        for x in [int(0), int(1), ratio(5, 2)] {
            for r in 1..=3 {
                for w in [vec![1], vec![1, 2], vec![1, 1, 2]] {
                    for c in specialization_checks(&ratio(a, b), &x, r, &w, 8).expect("reductions") {
                        checked += 1;
                        if !c.holds() {
                            failed.push(c.summary());
                        }
                    }
                }
            }
        }
    }
    let detail = match failed.first() {
        None => format!("{checked} exact equalities over 5 reductions"),
        Some(s) => format!("{} of {checked} failed, first: {s}", failed.len()),
    };
    outcome(failed.is_empty(), detail)
}

fn criterion_6() -> Outcome {
    let full = [1i64, 2, 3, 1];
    let mut checked = 0;
    let mut failed = Vec::new();
    for big_n in 0..=3 {
        let mut vectors = vec![full[..=big_n].to_vec()];
        vectors.push(vec![1; big_n + 1]);
        for a in &vectors {
            for w in [int(0), ratio(1, 2), int(2)] {
                for n in 1..=12 {
                    let c = check_bernoulli_difference(n, big_n, a, &w).expect("difference");
                    checked += 1;
                    if !c.holds() {
                        failed.push(c.summary());
                    }
                }
            }
        }
    }
    let detail = match failed.first() {
        None => format!("{checked} exact equalities"),
        Some(s) => format!("{} of {checked} failed, first: {s}", failed.len()),
    };
    outcome(failed.is_empty(), detail)
}

fn interpolation_grid(chis: &[Option<qeuler_core::DirichletCharacter>], n_max: usize) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for chi in chis {
        for q in [1.0 / 3.0, 0.5] {
            for x in [1.0, 2.0] {
                for w in [vec![1.0], vec![1.0, 2.0]] {
                    let mut params = ZetaParams::new(q, x, w).with_tol(1e-11);
                    params.chi = chi.clone();
                    for n in 0..=n_max {
                        let rep = check_interpolation(n, &params).expect("interpolation");
                        worst = worst.max(rep.abs_error());
                        count += 1;
                    }
                }
            }
        }
    }
    outcome(worst < 1e-8, format!("{count} points, worst abs err {worst:.2e} (tol 1e-8)"))
}

fn criterion_7() -> Outcome {
    interpolation_grid(&[None], 6)
}

fn criterion_8() -> Outcome {
    let chis: Vec<_> =
        [3, 5].into_iter().flat_map(|f| real_nontrivial(f).expect("characters")).map(Some).collect();
    interpolation_grid(&chis, 4)
}

fn criterion_9() -> Outcome {
    let mut failures = Vec::new();
    let mut runs = 0;
    for p in [3u64, 5] {
        let q = int(1 + p as i64);
        for r in 1..=2 {
            for x in [int(0), int(1)] {
                let spec = FamilySpec::q_euler(q.clone(), x.clone(), r);
                for n in 0..=4 {
                    let rep = oracle_convergence(&spec, n, p, 3..=7, 8).expect("convergence");
                    runs += 1;
                    let floor_ok = rep.rows.iter().all(|row| row.valuation + 2 >= row.level);
                    if !(floor_ok && rep.monotone()) {
                        let vals: Vec<u32> = rep.rows.iter().map(|r| r.valuation).collect();
                        failures.push(format!("p={p} r={r} x={x} n={n} valuations {vals:?}"));
                    }
                }
            }
        }
    }
    let detail = match failures.first() {
        None => format!("{runs} runs, v(S_N - oracle) >= N-2 and non-decreasing for N=3..7"),
        Some(s) => format!("{} of {runs} runs failed, first: {s}", failures.len()),
    };
    outcome(failures.is_empty(), detail)
}

fn criterion_10() -> Outcome {
    let mut failures = Vec::new();
    let mut runs = 0;
    for p in [3u64, 5] {
        let integrands = [
            IntegrandPoly::power(2),
            IntegrandPoly::shifted_power(&ratio(1, 2), 3),
            IntegrandPoly::power(1).with_weight(int(1 + p as i64), vec![1]),
        ];
        for f in &integrands {
            for shift in 1..=3u64 {
                let vals: Vec<u32> = (3..=7)
                    .map(|level| check_shift_identity(f, shift, p, level, 8).expect("shift").valuation())
                    .collect();
                runs += 1;
                if vals.windows(2).any(|w| w[0] > w[1]) {
                    failures.push(format!("shift p={p} n={shift} {f:?}: {vals:?}"));
                }
            }
            let vals: Vec<u32> =
                (1..=5).map(|k| check_q_limit(f, p, k, 5, 8).expect("q-limit").valuation()).collect();
            runs += 1;
            if vals.windows(2).any(|w| w[0] > w[1]) {
                failures.push(format!("q-limit p={p} {f:?}: {vals:?}"));
            }
        }
    }
    let detail = match failures.first() {
        None => format!("{runs} sweeps monotone (shift over N=3..7, q-limit over k=1..5)"),
        Some(s) => format!("{} of {runs} sweeps failed, first: {s}", failures.len()),
    };
    outcome(failures.is_empty(), detail)
}

fn criterion_11() -> Outcome {
    let params = ZetaParams::new(0.5, 1.0, vec![1.0]);
    let mut worst: f64 = 0.0;
    for s in [1.0, 2.5] {
        let rep = check_mellin(s, &params).expect("mellin");
        worst = worst.max(rep.rel_error());
    }
    outcome(worst <= 1e-4, format!("s in {{1, 2.5}}, worst rel err {worst:.2e} (tol 1e-4)"))
}

fn criterion_12() -> Outcome {
    let mut problems = Vec::new();
    for f in [1u64, 3, 5, 7, 9, 15] {
        let chars = enumerate_characters(f).expect("characters");
        if chars.len() as u64 != totient(f) {
            problems.push(format!("f={f}: {} characters", chars.len()));
        }
        let fi = f as i64;
        for chi in &chars {
            for a in 0..fi {
                for b in 0..fi {
                    if (chi.eval(a * b) - chi.eval(a) * chi.eval(b)).norm() > 1e-12 {
                        problems.push(format!("f={f}: not multiplicative at {a},{b}"));
                    }
                }
                if (chi.eval(a) - chi.eval(a + fi)).norm() > 1e-12 {
                    problems.push(format!("f={f}: not periodic at {a}"));
                }
            }
        }
        for (i, c1) in chars.iter().enumerate() {
            for (j, c2) in chars.iter().enumerate() {
                let s: Complex64 = (0..fi).map(|a| c1.eval(a) * c2.eval(a).conj()).sum();
                let want = if i == j { totient(f) as f64 } else { 0.0 };
                if (s - Complex64::new(want, 0.0)).norm() > 1e-9 {
                    problems.push(format!("f={f}: <chi_{i}, chi_{j}> = {s}"));
                }
            }
        }
    }
    let detail = match problems.first() {
        None => "f in {1,3,5,7,9,15}: counts, multiplicativity, orthogonality".to_string(),
        Some(s) => format!("{} problems, first: {s}", problems.len()),
    };
    outcome(problems.is_empty(), detail)
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("classical Euler numbers", Duration::from_secs(1), criterion_1),
        ("order-r series forms vs expansion", Duration::from_secs(10), criterion_2),
        ("(h,r) multi-index vs q-binomial form", Duration::from_secs(10), criterion_3),
        ("distribution relations", Duration::from_secs(10), criterion_4),
        ("specialization lattice", Duration::from_secs(5), criterion_5),
        ("Barnes-Bernoulli difference", Duration::from_secs(5), criterion_6),
        ("zeta interpolation at -n", Duration::from_secs(20), criterion_7),
        ("l-function interpolation at -n", Duration::from_secs(20), criterion_8),
        ("p-adic convergence", Duration::from_secs(60), criterion_9),
        ("shift identity and q-limit", Duration::from_secs(30), criterion_10),
        ("Mellin quadrature", Duration::from_secs(10), criterion_11),
        ("Dirichlet characters", Duration::from_secs(1), criterion_12),
    ];
    let mut all = true;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let pass = out.pass && elapsed <= *budget;
        all &= pass;
        println!(
            "criterion {:>2} [PRIMARY] {}: {} ({}; {:.2}s of {}s)",
            i + 1,
            name,
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
