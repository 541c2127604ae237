use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hforge_bench::hadamard;
use hforge_core::objects::{verify_hadamard, verify_hadamard_sampled};
use hforge_core::plugin::Check;
use std::hint::black_box;

fn hadamard_checks(c: &mut Criterion) {
    let mut group = c.benchmark_group("hadamard");
    group.sample_size(10);
    for (r, s, w) in [(2, 1, 3), (14, 13, 1), (129, 128, 1)] {
        let h = hadamard(r, s, w);
        let n = h.order();
        group.bench_with_input(BenchmarkId::new("exact", n), &h, |b, h| b.iter(|| verify_hadamard(black_box(h))));
        group.bench_with_input(BenchmarkId::new("sampled", n), &h, |b, h| {
            b.iter(|| verify_hadamard_sampled(black_box(h), Check::DEFAULT_PAIRS, Check::DEFAULT_SEED))
        });
    }
    group.bench_function("pipeline_516", |b| b.iter(|| hadamard(black_box(65), 64, 1)));
    group.finish();
}

criterion_group!(benches, hadamard_checks);
criterion_main!(benches);
