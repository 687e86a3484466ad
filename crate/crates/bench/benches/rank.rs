use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use perigid_bench::{body_bar_graph, periodic_graph, random_matrix};
use perigid_core::{count_rank, is_rigid, Settings};
use std::hint::black_box;

fn exact_rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank");
    for n in [10usize, 20, 40] {
        let m = random_matrix(n, n + 5, 1000, n as u64);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| black_box(m.rank())));
    }
    group.finish();
}

fn rigidity(c: &mut Criterion) {
    let mut group = c.benchmark_group("is_rigid");
    group.sample_size(10);
    for n in [4usize, 8, 12] {
        let g = periodic_graph(n, 2, n, 7);
        let s = Settings::new(2, 2).with_trials(1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| black_box(is_rigid(g, &s).unwrap().rigid))
        });
    }
    group.finish();
}

fn counts(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_rank");
    group.sample_size(10);
    for bars in [6usize, 10, 14] {
        let h = body_bar_graph(3, bars, 2, bars as u64);
        group.bench_with_input(BenchmarkId::from_parameter(bars), &h, |b, h| {
            b.iter(|| black_box(count_rank(h, 2, 2).unwrap().rigid))
        });
    }
    group.finish();
}

criterion_group!(benches, exact_rank, rigidity, counts);
criterion_main!(benches);
