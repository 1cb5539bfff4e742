//! End-to-end verification benchmarks.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use polystab_bench::{running_example, two_piece_example};
use polystab_cli::{generate_instance, InstanceSpec};
use polystab_core::RatVec;

fn bench_verify(c: &mut Criterion) {
    let simple = running_example();
    let x0 = RatVec::from_ints(&[0]);
    c.bench_function("verify running example", |b| {
        b.iter(|| black_box(&simple).verify_stability(&x0, None).unwrap())
    });

    let wider = two_piece_example();
    c.bench_function("verify two-piece example", |b| {
        b.iter(|| black_box(&wider).verify_stability(&x0, None).unwrap())
    });

    let generated = generate_instance(&InstanceSpec::new(42, 2, 2)).unwrap();
    let x0 = RatVec::zeros(2);
    c.bench_function("verify generated instance dims 2,2", |b| {
        b.iter(|| black_box(&generated).verify_stability(&x0, None).unwrap())
    });
}

fn bench_value_function(c: &mut Criterion) {
    let generated = generate_instance(&InstanceSpec::new(7, 3, 2)).unwrap();
    c.bench_function("value_function dims 3,2", |b| {
        b.iter(|| black_box(&generated).value_function().unwrap())
    });
}

criterion_group!(benches, bench_verify, bench_value_function);
criterion_main!(benches);
