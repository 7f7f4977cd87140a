use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use quadmod::betticalc::{assemble_moduli_poincare, goettsche_series, QUADRIC_BETTI};
use quadmod::extcalc::{pairs, solve_pair};
use quadmod::lesolve::solve;
use quadmod::sheafalg::catalog;
use quadmod::wallfind::find_walls;
use quadmod::{verify_all, ExactSeq, HomFacts, LinPoly, PairPoly, PipelineConfig};

fn goettsche(c: &mut Criterion) {
    c.bench_function("goettsche_hilb3", |b| b.iter(|| goettsche_series(black_box(QUADRIC_BETTI), 3)));
    c.bench_function("goettsche_hilb8", |b| b.iter(|| goettsche_series(black_box(QUADRIC_BETTI), 8)));
}

fn chase(c: &mut Criterion) {
    let seq = ExactSeq::from_dims(&[Some(1), None, Some(4), None, None, Some(2), Some(3), None, Some(1)]).unwrap();
    c.bench_function("lesolve_nine_terms", |b| b.iter(|| solve(black_box(&seq))));
    let f = catalog::generic_resolution();
    c.bench_function("h_dims_generic_resolution", |b| b.iter(|| black_box(&f).h_dims()));
}

fn ext(c: &mut Criterion) {
    let facts = HomFacts::paper();
    let (a, b) = (pairs::quintic_pair(), pairs::line_plus_one());
    c.bench_function("pair_ext_quintic_line", |bench| bench.iter(|| solve_pair(black_box(&a), black_box(&b), &facts)));
}

fn walls(c: &mut Criterion) {
    let whole = PairPoly::with_section(LinPoly::new(4, 2, 1));
    c.bench_function("find_walls_4m2n1", |b| b.iter(|| find_walls(black_box(whole), (4, 2))));
}

fn pipeline(c: &mut Criterion) {
    let cfg = PipelineConfig::default();
    c.bench_function("assemble_moduli_poincare", |b| b.iter(|| assemble_moduli_poincare(black_box(&cfg))));
    let mut group = c.benchmark_group("report");
    group.sample_size(10);
    group.bench_function("verify_all", |b| b.iter(verify_all));
    group.finish();
}

criterion_group!(benches, goettsche, chase, ext, walls, pipeline);
criterion_main!(benches);
