//! Benchmarks for the hot paths: finite-field rank, MRD construction,
//! subcode filtering, plan building and formula evaluation.

use cdc_bench::random_matrix;
use cdc_core::*;
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn bench_rank(c: &mut Criterion) {
    let m = random_matrix(2, 6, 10, 1);
    c.bench_function("rank 6x10 GF(2)", |b| b.iter(|| black_box(&m).rank()));
    let m9 = random_matrix(9, 8, 8, 2);
    c.bench_function("rank 8x8 GF(9)", |b| b.iter(|| black_box(&m9).rank()));
}

fn bench_gabidulin(c: &mut Criterion) {
    c.bench_function("gabidulin 6x10 delta 4 GF(2)", |b| {
        b.iter(|| gabidulin(6, 10, 4, 2).unwrap())
    });
    c.bench_function("gabidulin 4x8 delta 4 GF(5)", |b| {
        b.iter(|| gabidulin(4, 8, 4, 5).unwrap())
    });
}

fn bench_subfilter(c: &mut Criterion) {
    let f = FerrersDiagram::new(vec![2, 3, 4, 5, 6, 6]).unwrap();
    c.bench_function("subfilter [2,3,4,5,6,6] delta 4 GF(2)", |b| {
        b.iter(|| mrd_subfilter(&f, 4, 2, Orientation::AsIs).unwrap())
    });
    c.bench_function("staircase t=2 adapted GF(3)", |b| {
        b.iter(|| staircase_t2_code(3).unwrap())
    });
}

fn bench_min_rank(c: &mut Criterion) {
    let code = gabidulin(3, 4, 2, 2).unwrap(); // dimension 8: 255 codewords
    c.bench_function("exhaustive min rank dim 8 GF(2)", |b| {
        b.iter(|| code_min_rank(&code, 1 << 20, 0, 1))
    });
}

fn bench_plan(c: &mut Criterion) {
    c.bench_function("plan (2,5,2) formulas only", |b| {
        b.iter(|| build_plan(2, 5, 2, false).unwrap())
    });
    c.bench_function("theorem 3.2 polynomial (5,9,4)", |b| {
        b.iter(|| cardinality_theorem32(5, 9, 4).unwrap())
    });
    c.bench_function("skeleton (3,7,2)", |b| {
        b.iter(|| skeleton_theorem31(3, 7, 2).unwrap())
    });
}

criterion_group!(
    benches,
    bench_rank,
    bench_gabidulin,
    bench_subfilter,
    bench_min_rank,
    bench_plan
);
criterion_main!(benches);
