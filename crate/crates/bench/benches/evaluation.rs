use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;

use qeuler_core::families::{gf_expand, series_sum};
use qeuler_core::padic::{fermionic_sum_multi, IntegrandPoly};
use qeuler_core::qzeta::{zeta_qr, ZetaParams};
use qeuler_core::rational::{int, ratio};
use qeuler_core::{FamilySpec, SeriesForm};

fn expansion(c: &mut Criterion) {
    let spec = FamilySpec::barnes(ratio(1, 3), ratio(5, 2), vec![1, 1, 2]);
    c.bench_function("gf_expand barnes r=3 n=12", |b| b.iter(|| gf_expand(black_box(&spec), 12).unwrap()));
    let hr = FamilySpec::q_euler_hr(ratio(1, 2), int(1), 1, 3);
    c.bench_function("gf_expand hr h=1 r=3 n=12", |b| b.iter(|| gf_expand(black_box(&hr), 12).unwrap()));
}

fn series(c: &mut Criterion) {
    let spec = FamilySpec::q_euler(ratio(1, 2), int(1), 3).to_numeric();
    c.bench_function("series_sum multi r=3 n=8", |b| {
        b.iter(|| series_sum(black_box(&spec), 8, SeriesForm::MultiIndex, 1e-12).unwrap())
    });
    c.bench_function("series_sum single r=3 n=8", |b| {
        b.iter(|| series_sum(black_box(&spec), 8, SeriesForm::SingleIndex, 1e-12).unwrap())
    });
}

fn padic(c: &mut Criterion) {
    let f = IntegrandPoly::shifted_power(&int(1), 4).with_weight(int(6), vec![1, 1]);
    c.bench_function("fermionic sum p=5 N=6 r=2 n=4", |b| {
        b.iter(|| fermionic_sum_multi(black_box(&f), &int(1), 2, 5, 6, 8).unwrap())
    });
}

fn zeta(c: &mut Criterion) {
    let params = ZetaParams::new(0.5, 1.0, vec![1.0, 2.0]).with_tol(1e-10);
    let s = Complex64::new(2.0, 1.0);
    c.bench_function("zeta_qr r=2 s=2+i", |b| b.iter(|| zeta_qr(black_box(s), &params).unwrap()));
}

criterion_group!(benches, expansion, series, padic, zeta);
criterion_main!(benches);
