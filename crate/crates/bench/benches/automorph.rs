use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use automorph::{
    build_automorphism, eval_series, fd_derivative, solve_b_arctan, solve_b_tan, taylor, verify,
    MapExpr, ToleranceProfile,
};

fn bench_solver(c: &mut Criterion) {
    let mut group = c.benchmark_group("solver");
    group.bench_function("solve_b_arctan_a4", |b| {
        b.iter(|| solve_b_arctan(black_box(4.0), 1e-12).unwrap())
    });
    group.bench_function("solve_b_tan_a_quarter", |b| {
        b.iter(|| solve_b_tan(black_box(0.25), 1e-12).unwrap())
    });
    group.bench_function("build_automorphism_a100", |b| {
        b.iter(|| build_automorphism(black_box(100.0), 1e-12).unwrap())
    });
    group.finish();
}

fn bench_eval(c: &mut Criterion) {
    let mut group = c.benchmark_group("eval");
    let h10 = MapExpr::iterate(MapExpr::SinHalfPi, 10).unwrap();
    group.bench_function("iterate10_eval_grid1001", |b| {
        b.iter(|| {
            let mut acc = 0.0;
            for i in 0..1001 {
                let x = -1.0 + 2.0 * (i as f64 / 1000.0);
                acc += h10.eval(black_box(x)).unwrap();
            }
            acc
        })
    });
    let built = build_automorphism(4.0, 1e-12).unwrap();
    group.bench_function("fd_derivative", |b| {
        b.iter(|| fd_derivative(&built, black_box(0.5), 1e-5).unwrap())
    });
    group.finish();
}

fn bench_series(c: &mut Criterion) {
    let mut group = c.benchmark_group("series");
    let tan = build_automorphism(0.25, 1e-12).unwrap();
    let arctan = build_automorphism(4.0, 1e-12).unwrap();
    group.bench_function("taylor_tan_130", |b| {
        b.iter(|| taylor(black_box(&tan), 130).unwrap())
    });
    group.bench_function("taylor_arctan_400", |b| {
        b.iter(|| taylor(black_box(&arctan), 400).unwrap())
    });
    let s = taylor(&arctan, 400).unwrap();
    group.bench_function("horner_400", |b| {
        b.iter(|| eval_series(black_box(&s), black_box(0.05)))
    });
    group.finish();
}

fn bench_verify(c: &mut Criterion) {
    let built = build_automorphism(4.0, 1e-12).unwrap();
    let profile = ToleranceProfile::default();
    c.bench_function("verify_grid2001", |b| {
        b.iter(|| verify(black_box(&built), 4.0, 2001, &profile).unwrap())
    });
}

criterion_group!(
    benches,
    bench_solver,
    bench_eval,
    bench_series,
    bench_verify
);
criterion_main!(benches);
