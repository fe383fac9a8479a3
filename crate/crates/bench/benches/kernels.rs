use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use hurwitz_bench::{quasi_stable_poly, stable_poly};
use hurwitz_core::idealizer::in_y;
use hurwitz_core::roots::find_roots;
use hurwitz_core::search::example_two_g;
use hurwitz_core::stability::{hurwitz_minors, quasi_stability_agt};

fn minors(c: &mut Criterion) {
    let mut group = c.benchmark_group("hurwitz_minors");
    for n in [4, 8, 16] {
        let p = stable_poly(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| {
            b.iter(|| hurwitz_minors(black_box(p)).unwrap())
        });
    }
    group.finish();
}

fn agt(c: &mut Criterion) {
    let mut group = c.benchmark_group("quasi_stability_agt");
    for n in [4, 8, 16] {
        let p = quasi_stable_poly(n);
        group.bench_with_input(BenchmarkId::from_parameter(n + 2), &p, |b, p| {
            b.iter(|| quasi_stability_agt(black_box(p)).unwrap())
        });
    }
    group.finish();
}

fn roots(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_roots");
    for n in [4, 8, 16] {
        let p = stable_poly(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| {
            b.iter(|| find_roots(black_box(p), 1e-12).unwrap())
        });
    }
    group.finish();
}

fn y5(c: &mut Criterion) {
    let g = example_two_g();
    c.bench_function("in_y/5", |b| b.iter(|| in_y(5, black_box(&g)).unwrap()));
}

criterion_group!(benches, minors, agt, roots, y5);
criterion_main!(benches);
