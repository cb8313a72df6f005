use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use vfrep_core::catalog::{affine_a, finite_a};
use vfrep_core::oracle::{brute_force_normalized, enumeration_sweep};
use vfrep_core::scalar::{int, ratio, Scalar};
use vfrep_core::{
    build_cartan_data, build_representation, certify, normalized_solution_matrices,
    verify_relations, Derivation, Gcm, Representation,
};

fn rep(m: Vec<Vec<i64>>, n: &[i64]) -> Representation {
    let g = Gcm::new(m).unwrap();
    let cd = build_cartan_data(&g).unwrap();
    let pool = [int(2), ratio(-1, 3), int(5), ratio(7, 2), int(-1)];
    let d: Vec<Scalar> = (0..g.rank())
        .map(|i| pool[i % pool.len()].clone())
        .collect();
    let a = normalized_solution_matrices(&g).unwrap()[0]
        .scale(&d)
        .unwrap();
    build_representation(&cd, &a, n).unwrap()
}

fn bracket(c: &mut Criterion) {
    let x = Derivation::monomial_field(&[2, -1, 3], &[ratio(1, 2), int(-3), int(4)]);
    let y = Derivation::monomial_field(&[-1, 2, 0], &[int(5), ratio(-2, 3), int(1)]);
    let sum = &x + &y;
    c.bench_function("bracket/monomial", |b| {
        b.iter(|| black_box(&x).bracket(black_box(&y)))
    });
    c.bench_function("bracket/two_terms", |b| {
        b.iter(|| black_box(&sum).bracket(black_box(&x)))
    });
    c.bench_function("ad_pow/4", |b| {
        b.iter(|| black_box(&x).ad_pow(4, black_box(&y)))
    });
}

fn relations(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_relations");
    for r in [2usize, 4, 6] {
        let finite = rep(finite_a(r), &vec![1; r]);
        group.bench_with_input(BenchmarkId::new("finite", r), &finite, |b, rep| {
            b.iter(|| verify_relations(rep))
        });
        let affine = rep(affine_a(r), &vec![-1; r + 1]);
        group.bench_with_input(BenchmarkId::new("affine", r), &affine, |b, rep| {
            b.iter(|| verify_relations(rep))
        });
    }
    group.finish();
}

fn loop_law(c: &mut Criterion) {
    let mut group = c.benchmark_group("loop_law");
    group.sample_size(10);
    for k in 1..=3 {
        let affine = rep(affine_a(k), &vec![1; k + 1]);
        group.bench_with_input(BenchmarkId::new("certify", k + 1), &affine, |b, rep| {
            b.iter(|| certify(rep, (-3, 3)).unwrap())
        });
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumeration");
    let g = Gcm::new(affine_a(5)).unwrap();
    group.bench_function("structured/A5affine", |b| {
        b.iter(|| normalized_solution_matrices(black_box(&g)).unwrap())
    });
    group.bench_function("oracle/A5affine", |b| {
        b.iter(|| brute_force_normalized(black_box(&g)).unwrap())
    });
    group.sample_size(10);
    group.bench_function("sweep/rank3", |b| {
        b.iter(|| enumeration_sweep(3, -3).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bracket, relations, loop_law, enumeration);
criterion_main!(benches);
