use criterion::{criterion_group, criterion_main, Criterion};

use stark_tc::sweep::{
    concurrence_surface_seq, concurrence_surface_with_workers, GridSpec,
};

fn bench_surface(c: &mut Criterion) {
    let grid = GridSpec::new(0.05, 5.0, 64, 0.05, 5.0, 64).unwrap();
    let mut group = c.benchmark_group("surface_64x64");
    group.sample_size(20);
    group.bench_function("sequential", |b| {
        b.iter(|| concurrence_surface_seq(&grid).unwrap())
    });
    group.bench_function("parallel_default_pool", |b| {
        b.iter(|| concurrence_surface_with_workers(&grid, 0).unwrap())
    });
    group.bench_function("parallel_2_workers", |b| {
        b.iter(|| concurrence_surface_with_workers(&grid, 2).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_surface);
criterion_main!(benches);
