use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use segre_bench::{random_product, random_state, rng};
use segre_core::{
    flatten, generalized_concurrence, is_fully_separable, minor_sum, minor_sum_enumerated, minor_sum_gram,
    pluecker_measure, Bipartition,
};

fn minor_sums(c: &mut Criterion) {
    let mut group = c.benchmark_group("minor_sum");
    for m in [4usize, 6, 8] {
        let s = random_state(&mut rng(m as u64), &vec![2; m]);
        let b = Bipartition::new((1..=m / 2).collect(), m).unwrap();
        let f = flatten(&s, &b).unwrap();
        group.bench_with_input(BenchmarkId::new("enumerated", m), &f, |bench, f| {
            bench.iter(|| minor_sum_enumerated(f))
        });
        group.bench_with_input(BenchmarkId::new("gram", m), &f, |bench, f| bench.iter(|| minor_sum_gram(f)));
        group.bench_with_input(BenchmarkId::new("dispatch", m), &f, |bench, f| bench.iter(|| minor_sum(f)));
    }
    group.finish();
}

fn concurrence(c: &mut Criterion) {
    let mut group = c.benchmark_group("generalized_concurrence");
    group.sample_size(20);
    for m in [3usize, 6, 9] {
        let s = random_state(&mut rng(10 + m as u64), &vec![2; m]);
        group.bench_with_input(BenchmarkId::from_parameter(m), &s, |bench, s| {
            bench.iter(|| generalized_concurrence(s))
        });
    }
    group.finish();
}

fn separability(c: &mut Criterion) {
    let mut group = c.benchmark_group("is_fully_separable");
    for m in [4usize, 8] {
        let s = random_product(&mut rng(20 + m as u64), &vec![2; m]);
        group.bench_with_input(BenchmarkId::new("product", m), &s, |bench, s| {
            bench.iter(|| is_fully_separable(s, 1e-10))
        });
    }
    group.finish();
}

fn pluecker(c: &mut Criterion) {
    let mut group = c.benchmark_group("pluecker_measure");
    for m in [3usize, 6, 9] {
        let s = random_state(&mut rng(30 + m as u64), &vec![2; m]);
        group.bench_with_input(BenchmarkId::from_parameter(m), &s, |bench, s| {
            bench.iter(|| pluecker_measure(s, 1).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, minor_sums, concurrence, separability, pluecker);
criterion_main!(benches);
