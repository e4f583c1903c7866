use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use phasemask_core::engine::{bench_base_matrix, bench_update};
use phasemask_core::{naive_update, precompute, ToleranceConfig};

const SEED: u64 = 2024;

fn square_updates(c: &mut Criterion) {
    let tol = ToleranceConfig::default();
    let mut group = c.benchmark_group("square_update");
    for n in [16usize, 64, 128, 256] {
        let a = bench_base_matrix(n, n, SEED, &tol).unwrap();
        let base = precompute(&a, &tol).unwrap();
        let t = bench_update(n, n, SEED, 0).unwrap();
        group.bench_with_input(BenchmarkId::new("structured", n), &t, |b, t| {
            b.iter(|| base.apply_update(black_box(t)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("naive", n), &t, |b, t| {
            b.iter(|| naive_update(black_box(&a), black_box(t), &tol).unwrap())
        });
    }
    group.finish();
}

fn rectangular_updates(c: &mut Criterion) {
    let tol = ToleranceConfig::default();
    let mut group = c.benchmark_group("rectangular_update");
    for (m, n) in [(48usize, 16usize), (192, 64), (64, 192)] {
        let a = bench_base_matrix(m, n, SEED, &tol).unwrap();
        let base = precompute(&a, &tol).unwrap();
        let t = bench_update(m, n, SEED, 0).unwrap();
        let label = format!("{m}x{n}");
        group.bench_with_input(BenchmarkId::new("structured", &label), &t, |b, t| {
            b.iter(|| base.apply_update(black_box(t)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("naive", &label), &t, |b, t| {
            b.iter(|| naive_update(black_box(&a), black_box(t), &tol).unwrap())
        });
    }
    group.finish();
}

fn materialize(c: &mut Criterion) {
    let t = bench_update(256, 256, SEED, 0).unwrap();
    c.bench_function("materialize_256", |b| b.iter(|| black_box(&t).materialize()));
}

criterion_group!(benches, square_updates, rectangular_updates, materialize);
criterion_main!(benches);
