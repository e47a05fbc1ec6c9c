use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use reeb_ruling::oracle::brute_force_complexity;
use reeb_ruling::{parallel_reeb_complexity, reeb_graph, Direction};
use reeb_ruling_bench::{lower_bound, random, SPIKES};

fn complexity(c: &mut Criterion) {
    let mut group = c.benchmark_group("parallel_reeb_complexity");
    group.sample_size(10);
    for n in SPIKES {
        let p = lower_bound(n);
        group.throughput(Throughput::Elements(p.n() as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| {
            b.iter(|| parallel_reeb_complexity(p))
        });
    }
    group.finish();
}

fn reeb(c: &mut Criterion) {
    let mut group = c.benchmark_group("reeb_graph");
    group.sample_size(10);
    let v = Direction::new(0.3, 1.0).unwrap();
    for n in SPIKES {
        let p = lower_bound(n);
        group.throughput(Throughput::Elements(p.n() as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| {
            b.iter(|| reeb_graph(p, &v).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_force_complexity");
    group.sample_size(10);
    for n in [12, 24] {
        let p = random(n, 1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| {
            b.iter(|| brute_force_complexity(p).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, complexity, reeb, oracle);
criterion_main!(benches);
