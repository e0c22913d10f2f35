use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rcswap::involute;
use rcswap::oracle::{joint_distribution, joint_distribution_par, partitions_of};

fn enumerate(c: &mut Criterion) {
    let mut g = c.benchmark_group("partitions_of");
    for n in [20, 30, 40] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| partitions_of(black_box(n)).count())
        });
    }
    g.finish();
}

fn distribution(c: &mut Criterion) {
    let mut g = c.benchmark_group("joint_distribution");
    g.sample_size(20);
    g.bench_function("serial n=30 s=3", |b| {
        b.iter(|| joint_distribution(black_box(30), 3).unwrap())
    });
    g.bench_function("parallel n=30 s=3", |b| {
        b.iter(|| joint_distribution_par(black_box(30), 3, 0).unwrap())
    });
    g.finish();
}

fn involution(c: &mut Criterion) {
    let all: Vec<_> = partitions_of(24).collect();
    let mut g = c.benchmark_group("involute");
    g.sample_size(20);
    for s in [1, 3, 5] {
        g.bench_with_input(BenchmarkId::new("all partitions of 24", s), &s, |b, &s| {
            b.iter(|| {
                all.iter()
                    .map(|p| involute(p, s).unwrap().len())
                    .sum::<usize>()
            })
        });
    }
    g.finish();
}

criterion_group!(benches, enumerate, distribution, involution);
criterion_main!(benches);
