//! Seed batches over 𝔽_1009, rayon against the sequential loop.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use gw_welschinger::enumerate::{run_batch_sequential, PencilOptions};
use gw_welschinger::scalars::FieldDescriptor;

const SEEDS: u64 = 16;

fn batch(c: &mut Criterion) {
    let f = FieldDescriptor::PrimeField(1009);
    let seeds: Vec<u64> = (0..SEEDS).collect();
    let opts = PencilOptions::default();
    let mut group = c.benchmark_group("cubic_batch_f1009");
    group.sample_size(10);
    group.bench_function("sequential", |b| b.iter(|| run_batch_sequential(f, black_box(&[1; 8]), 3, &seeds, &opts)));
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| {
        b.iter(|| gw_welschinger::enumerate::run_batch_parallel(f, black_box(&[1; 8]), 3, &seeds, &opts))
    });
    group.finish();
}

criterion_group!(benches, batch);
criterion_main!(benches);
