use clap::{Args, ValueEnum};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use qeuler_core::dirichlet::real_nontrivial;
use qeuler_core::families::{
    check_bernoulli_difference, check_difference_identity, check_distribution, gf_expand, series_sum,
    specialization_checks,
};
use qeuler_core::padic::{check_q_limit, check_shift_identity, oracle_convergence, IntegrandPoly};
use qeuler_core::qzeta::{check_interpolation, check_mellin, zeta_qr, ZetaParams};
use qeuler_core::rational::{format, int, ratio, to_f64, Rational};
use qeuler_core::{Error, ExactCheck, FamilySpec, Result, SeriesForm};

use crate::args;
use crate::output::{float, Row, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Theorems,
    Distribution,
    Bernoulli,
    PadicConvergence,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    suite: String,
    #[arg(long = "q-grid", value_delimiter = ',', value_parser = args::rational, default_value = "1/3,1/2")]
    q_grid: Vec<Rational>,
    #[arg(long = "r-max", default_value_t = 3)]
    r_max: usize,
    #[arg(long = "n-max", default_value_t = 8)]
    n_max: usize,
    #[arg(long = "f-grid", value_delimiter = ',', default_value = "1,3,5")]
    f_grid: Vec<u64>,
    /// Seed for the randomly sampled symmetry checks.
    #[arg(long, default_value_t = 2024)]
    seed: u64,
}

const WEIGHT_GRID: [&[i64]; 3] = [&[1], &[1, 2], &[1, 1, 2]];

struct Grid {
    qs: Vec<Rational>,
    r_max: usize,
    n_max: usize,
    fs: Vec<u64>,
    seed: u64,
}

struct Outcome {
    pass: bool,
    worst: f64,
    tolerance: f64,
    detail: String,
}

type CheckFn = Box<dyn Fn() -> Result<Outcome> + Send + Sync>;

struct Check {
    id: String,
    run: CheckFn,
}

fn check(id: String, run: impl Fn() -> Result<Outcome> + Send + Sync + 'static) -> Check {
    Check { id, run: Box::new(run) }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn numeric(worst: f64, tolerance: f64, count: usize) -> Outcome {
    Outcome { pass: worst <= tolerance, worst, tolerance, detail: format!("{count} comparisons") }
}

fn exact(checks: &[ExactCheck]) -> Outcome {
    let failed: Vec<&ExactCheck> = checks.iter().filter(|c| !c.holds()).collect();
    Outcome {
        pass: failed.is_empty(),
        worst: qeuler_core::report::worst_exact(checks),
        tolerance: 0.0,
        detail: match failed.first() {
            None => format!("{} exact equalities", checks.len()),
            Some(c) => format!("{} of {} failed; {}", failed.len(), checks.len(), c.summary()),
        },
    }
}

fn theorems(g: &Grid) -> Vec<Check> {
    let mut out = Vec::new();
    let xs = [int(0), int(1), ratio(5, 2)];
    for q in &g.qs {
        let qs = format(q);
        for r in 1..=g.r_max {
            for x in &xs {
                let spec = FamilySpec::q_euler(q.clone(), x.clone(), r);
                let n_max = g.n_max;
                out.push(check(format!("theorems/order-r/q={qs}/r={r}/x={}", format(x)), move || {
                    let e = gf_expand(&spec, n_max)?;
                    let num = spec.to_numeric();
                    let mut worst: f64 = 0.0;
                    for (n, v) in e.iter().enumerate() {
                        for form in [SeriesForm::MultiIndex, SeriesForm::SingleIndex] {
                            let s = series_sum(&num, n, form, 1e-12)?.numeric().re;
                            worst = worst.max(rel(s, to_f64(v)));
                        }
                    }
                    Ok(numeric(worst, 1e-9, 2 * e.len()))
                }));
            }
            for h in 1..=3 {
                let num = FamilySpec::q_euler_hr(q.clone(), int(1), h, r).to_numeric();
                let n_max = g.n_max.min(6);
                out.push(check(format!("theorems/hr-forms/q={qs}/h={h}/r={r}"), move || {
                    let mut worst: f64 = 0.0;
                    for n in 0..=n_max {
                        let a = series_sum(&num, n, SeriesForm::MultiIndex, 1e-12)?.numeric().re;
                        let b = series_sum(&num, n, SeriesForm::SingleIndex, 1e-12)?.numeric().re;
                        worst = worst.max(rel(a, b));
                    }
                    Ok(numeric(worst, 1e-9, n_max + 1))
                }));
            }
        }
        for w in WEIGHT_GRID {
            let spec = FamilySpec::barnes(q.clone(), int(1), w.to_vec());
            let n_max = g.n_max;
            out.push(check(format!("theorems/barnes/q={qs}/w={w:?}"), move || {
                let e = gf_expand(&spec, n_max)?;
                let num = spec.to_numeric();
                let mut worst: f64 = 0.0;
                for (n, v) in e.iter().enumerate() {
                    worst = worst.max(rel(
                        series_sum(&num, n, SeriesForm::MultiIndex, 1e-12)?.numeric().re,
                        to_f64(v),
                    ));
                }
                Ok(numeric(worst, 1e-9, e.len()))
            }));
        }
        for &f in g.fs.iter().filter(|&&f| f > 1) {
            for chi in real_nontrivial(f).unwrap_or_default() {
                for r in 1..=g.r_max.min(2) {
                    let spec = FamilySpec::chi_q_euler_order(q.clone(), int(1), r, chi.clone());
                    let n_max = g.n_max.min(6);
                    out.push(check(format!("theorems/chi-series/q={qs}/f={f}/r={r}"), move || {
                        let e = gf_expand(&spec, n_max)?;
                        let num = spec.to_numeric();
                        let mut worst: f64 = 0.0;
                        for (n, v) in e.iter().enumerate() {
                            for form in [SeriesForm::MultiIndex, SeriesForm::SingleIndex] {
                                worst =
                                    worst.max(rel(series_sum(&num, n, form, 1e-12)?.numeric().re, to_f64(v)));
                            }
                        }
                        Ok(numeric(worst, 1e-9, 2 * e.len()))
                    }));
                }
            }
        }
        for x in &xs {
            let (q, x) = (q.clone(), x.clone());
            let (r_max, n_max) = (g.r_max, g.n_max);
            out.push(check(format!("theorems/lattice/q={qs}/x={}", format(&x)), move || {
                let mut all = Vec::new();
                for r in 1..=r_max {
                    for w in WEIGHT_GRID {
                        all.extend(specialization_checks(&q, &x, r, w, n_max)?);
                    }
                }
                Ok(exact(&all))
            }));
        }
        let qf = to_f64(q);
        if qf > 0.0 && qf < 1.0 {
            for w in [vec![1.0], vec![1.0, 2.0]] {
                for x in [1.0, 2.0] {
                    let params = ZetaParams::new(qf, x, w.clone()).with_tol(1e-11);
                    let n_max = g.n_max.min(6);
                    out.push(check(format!("theorems/zeta-interpolation/q={qs}/w={w:?}/x={x}"), move || {
                        let mut worst: f64 = 0.0;
                        for n in 0..=n_max {
                            worst = worst.max(check_interpolation(n, &params)?.abs_error());
                        }
                        Ok(numeric(worst, 1e-8, n_max + 1))
                    }));
                }
            }
            for &f in g.fs.iter().filter(|&&f| f > 1) {
                for chi in real_nontrivial(f).unwrap_or_default() {
                    for w in [vec![1.0], vec![1.0, 2.0]] {
                        let params =
                            ZetaParams::new(qf, 1.0, w.clone()).with_chi(chi.clone()).with_tol(1e-11);
                        let n_max = g.n_max.min(4);
                        out.push(check(
                            format!("theorems/l-interpolation/q={qs}/f={f}/w={w:?}"),
                            move || {
                                let mut worst: f64 = 0.0;
                                for n in 0..=n_max {
                                    worst = worst.max(check_interpolation(n, &params)?.abs_error());
                                }
                                Ok(numeric(worst, 1e-8, n_max + 1))
                            },
                        ));
                    }
                }
            }
        }
    }
    for s in [1.0, 2.5] {
        out.push(check(format!("theorems/mellin/s={s}"), move || {
            let rep = check_mellin(s, &ZetaParams::new(0.5, 1.0, vec![1.0]))?;
            Ok(numeric(rep.rel_error(), 1e-4, 1))
        }));
    }
    let seed = g.seed;
    out.push(check(format!("theorems/sampled-symmetry/seed={seed}"), move || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst: f64 = 0.0;
        let mut exact_checks = Vec::new();
        for _ in 0..8 {
            let r = rng.random_range(2..=3);
            let w: Vec<i64> = (0..r).map(|_| rng.random_range(1..=3)).collect();
            let mut perm = w.clone();
            perm.shuffle(&mut rng);
            let q = ratio(rng.random_range(1..=4), 5);
            let x = ratio(rng.random_range(0..=6), 2);
            let a = gf_expand(&FamilySpec::barnes(q.clone(), x.clone(), w.clone()), 4)?;
            let b = gf_expand(&FamilySpec::barnes(q, x, perm.clone()), 4)?;
            for (n, (l, r)) in a.into_iter().zip(b).enumerate() {
                exact_checks.push(ExactCheck::new(format!("barnes {w:?}~{perm:?} n={n}"), l, r));
            }
            let qf: f64 = rng.random_range(0.2..0.8);
            let s = Complex64::new(rng.random_range(-3.0..3.0), rng.random_range(-1.0..1.0));
            let wf: Vec<f64> = w.iter().map(|&v| v as f64).collect();
            let pf: Vec<f64> = perm.iter().map(|&v| v as f64).collect();
            let za = zeta_qr(s, &ZetaParams::new(qf, 1.0, wf).with_tol(1e-10))?;
            let zb = zeta_qr(s, &ZetaParams::new(qf, 1.0, pf).with_tol(1e-10))?;
            worst = worst.max((za.value() - zb.value()).norm());
        }
        let ex = exact(&exact_checks);
        Ok(Outcome {
            pass: ex.pass && worst <= 2e-10,
            worst,
            tolerance: 2e-10,
            detail: format!("{}; zeta permutation drift {worst:.2e}", ex.detail),
        })
    }));
    out
}

fn distribution(g: &Grid) -> Vec<Check> {
    let mut out = Vec::new();
    let n_max = g.n_max.min(6);
    for q in &g.qs {
        let qs = format(q);
        let mut specs = Vec::new();
        for r in 1..=g.r_max {
            specs.push((format!("order-r/r={r}"), FamilySpec::q_euler(q.clone(), int(1), r)));
            for h in 1..=3 {
                specs.push((format!("hr/h={h}/r={r}"), FamilySpec::q_euler_hr(q.clone(), int(1), h, r)));
            }
        }
        for &f in g.fs.iter().filter(|&&f| f > 1) {
            for chi in real_nontrivial(f).unwrap_or_default() {
                specs.push((
                    format!("chi/f={f}/r=1"),
                    FamilySpec::chi_q_euler(q.clone(), int(1), chi.clone()),
                ));
                specs.push((
                    format!("chi/f={f}/r=2"),
                    FamilySpec::chi_q_euler_order(q.clone(), int(1), 2, chi.clone()),
                ));
                let q = q.clone();
                out.push(check(format!("distribution/difference/q={qs}/f={f}"), move || {
                    let mut all = Vec::new();
                    for m in 0..=n_max.min(5) {
                        for n in 1..=3 {
                            all.push(check_difference_identity(&chi, &q, m, n)?);
                        }
                    }
                    Ok(exact(&all))
                }));
            }
        }
        for (name, spec) in specs {
            let fs: Vec<u64> =
                g.fs.iter()
                    .copied()
                    .filter(|f| spec.chi.as_ref().is_none_or(|c| f % c.conductor() == 0))
                    .collect();
            out.push(check(format!("distribution/{name}/q={qs}"), move || {
                let mut all = Vec::new();
                for &f in &fs {
                    for n in 0..=n_max {
                        all.push(check_distribution(&spec, f, n)?);
                    }
                }
                Ok(exact(&all))
            }));
        }
    }
    out
}

/// Euler numbers from `(e^t + 1) g(t) = 2`.
fn euler_numbers(n: usize) -> Vec<Rational> {
    let mut fact = vec![int(1)];
    for k in 1..=n {
        fact.push(&fact[k - 1] / int(k as i64));
    }
    let mut g: Vec<Rational> = Vec::new();
    for k in 0..=n {
        let mut acc = if k == 0 { int(2) } else { int(0) };
        for j in 1..=k {
            acc -= &fact[j] * &g[k - j];
        }
        g.push(acc / int(2));
    }
    g.into_iter().enumerate().map(|(k, c)| c / &fact[k]).collect()
}

fn bernoulli(_g: &Grid) -> Vec<Check> {
    let mut out = vec![check("bernoulli/classical-euler".to_string(), || {
        let got = gf_expand(&FamilySpec::q_euler(int(1), int(0), 1), 10)?;
        let checks: Vec<ExactCheck> = got
            .into_iter()
            .zip(euler_numbers(10))
            .enumerate()
            .map(|(n, (l, r))| ExactCheck::new(format!("E_{n}"), l, r))
            .collect();
        Ok(exact(&checks))
    })];
    let full = [1i64, 2, 3, 1];
    for big_n in 0..=3 {
        let a = full[..=big_n].to_vec();
        out.push(check(format!("bernoulli/difference/N={big_n}"), move || {
            let mut all = Vec::new();
            for w in [int(0), ratio(1, 2), int(2)] {
                for n in 1..=12 {
                    all.push(check_bernoulli_difference(n, big_n, &a, &w)?);
                }
            }
            Ok(exact(&all))
        }));
    }
    out
}

fn padic_convergence(_g: &Grid) -> Vec<Check> {
    let mut out = Vec::new();
    for p in [3u64, 5] {
        for r in 1..=2 {
            out.push(check(format!("padic/oracle/p={p}/r={r}"), move || {
                let mut worst_margin = i64::MAX;
                let mut monotone = true;
                for n in 0..=4 {
                    for x in [int(0), int(1)] {
                        let spec = FamilySpec::q_euler(int(1 + p as i64), x, r);
                        let rep = oracle_convergence(&spec, n, p, 3..=7, 8)?;
                        monotone &= rep.monotone();
                        worst_margin = worst_margin.min(rep.min_margin(2));
                    }
                }
                Ok(Outcome {
                    pass: monotone && worst_margin >= 0,
                    worst: worst_margin as f64,
                    tolerance: 0.0,
                    detail: format!("valuation - (N-2) >= {worst_margin}, monotone {monotone}"),
                })
            }));
        }
        out.push(check(format!("padic/shift-and-q-limit/p={p}"), move || {
            let integrands = [
                IntegrandPoly::power(2),
                IntegrandPoly::shifted_power(&ratio(1, 2), 3),
                IntegrandPoly::power(1).with_weight(int(1 + p as i64), vec![1]),
            ];
            let mut bad = Vec::new();
            for f in &integrands {
                for shift in 1..=3 {
                    let v = (3..=7)
                        .map(|l| Ok(check_shift_identity(f, shift, p, l, 8)?.valuation()))
                        .collect::<Result<Vec<u32>>>()?;
                    if v.windows(2).any(|w| w[0] > w[1]) {
                        bad.push(format!("shift {shift}: {v:?}"));
                    }
                }
                let v = (1..=5)
                    .map(|k| Ok(check_q_limit(f, p, k, 5, 8)?.valuation()))
                    .collect::<Result<Vec<u32>>>()?;
                if v.windows(2).any(|w| w[0] > w[1]) {
                    bad.push(format!("q-limit: {v:?}"));
                }
            }
            Ok(Outcome {
                pass: bad.is_empty(),
                worst: bad.len() as f64,
                tolerance: 0.0,
                detail: bad.first().cloned().unwrap_or_else(|| "all sweeps monotone".into()),
            })
        }));
    }
    out
}

fn threads() -> usize {
    std::env::var("QEULER_THREADS").ok().and_then(|v| v.parse().ok()).unwrap_or(0)
}

pub fn run(a: &VerifyArgs) -> Result<Table> {
    let suite =
        Suite::from_str(&a.suite, true).map_err(|_| Error::Usage(format!("unknown suite '{}'", a.suite)))?;
    if a.f_grid.iter().any(|f| f % 2 == 0) {
        return Err(Error::Usage("f values must be odd".into()));
    }
    let grid =
        Grid { qs: a.q_grid.clone(), r_max: a.r_max, n_max: a.n_max, fs: a.f_grid.clone(), seed: a.seed };
    let mut checks = Vec::new();
    if matches!(suite, Suite::Theorems | Suite::All) {
        checks.extend(theorems(&grid));
    }
    if matches!(suite, Suite::Distribution | Suite::All) {
        checks.extend(distribution(&grid));
    }
    if matches!(suite, Suite::Bernoulli | Suite::All) {
        checks.extend(bernoulli(&grid));
    }
    if matches!(suite, Suite::PadicConvergence | Suite::All) {
        checks.extend(padic_convergence(&grid));
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads())
        .build()
        .map_err(|e| Error::Unsupported(format!("cannot start worker pool: {e}")))?;
    let mut results: Vec<(String, Result<Outcome>)> =
        pool.install(|| checks.par_iter().map(|c| (c.id.clone(), (c.run)())).collect());
    results.sort_by(|x, y| x.0.cmp(&y.0));

    let mut table = Table::new("verify", vec!["id", "pass", "worst", "tolerance", "detail"]);
    table.param("suite", a.suite.to_lowercase());
    table.param("q_grid", a.q_grid.iter().map(crate::output::rational).collect::<Vec<_>>());
    table.param("r_max", a.r_max);
    table.param("n_max", a.n_max);
    table.param("f_grid", a.f_grid.clone());
    table.param("seed", a.seed);
    let mut all = true;
    for (id, res) in results {
        let out = res.unwrap_or_else(|e| Outcome {
            pass: false,
            worst: f64::NAN,
            tolerance: 0.0,
            detail: format!("error: {e}"),
        });
        all &= out.pass;
        let mut row = Row::new();
        row.insert("id".into(), id.into());
        row.insert("pass".into(), out.pass.into());
        row.insert("worst".into(), float(out.worst));
        row.insert("tolerance".into(), float(out.tolerance));
        row.insert("detail".into(), out.detail.into());
        table.rows.push(row);
    }
    table.pass = Some(all);
    Ok(table)
}
