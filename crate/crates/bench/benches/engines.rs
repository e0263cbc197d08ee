use std::sync::Arc;

use bgg_bench::{a2, affine_a1, b2};
use bgg_core::nilpotent::build_nilpotent;
use bgg_core::quantum::symbolic_algebra;
use bgg_core::{BggComplex, Classical, NegativePart, WeylGroup};
use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

fn weyl(c: &mut Criterion) {
    let g = affine_a1();
    c.bench_function("weyl/affine_a1_length_12", |b| b.iter(|| WeylGroup::enumerate_up_to(&g, 12).unwrap()));
    let g = b2();
    c.bench_function("weyl/b2_squares", |b| {
        b.iter_batched(|| WeylGroup::enumerate_up_to(&g, 4).unwrap(), |w| w.squares().unwrap(), BatchSize::SmallInput)
    });
}

fn enveloping(c: &mut Criterion) {
    let g = b2();
    c.bench_function("enveloping/b2_degree_4_4", |b| {
        b.iter(|| NegativePart::new(&g, Classical).dim(&[4, 4]))
    });
    c.bench_function("nilpotent/affine_a1_height_8", |b| b.iter(|| build_nilpotent(&affine_a1(), 8).unwrap()));
}

fn complexes(c: &mut Criterion) {
    let g = a2();
    c.bench_function("bgg/a2_11_full", |b| {
        b.iter(|| {
            let complex = BggComplex::build(Arc::new(NegativePart::new(&g, Classical)), &[1, 1], 8, &[]).unwrap();
            complex.analyze()
        })
    });
    let g = affine_a1();
    c.bench_function("bgg/affine_a1_10_depth_5", |b| {
        b.iter(|| {
            let complex = BggComplex::build(Arc::new(NegativePart::new(&g, Classical)), &[1, 0], 5, &[]).unwrap();
            complex.analyze()
        })
    });
    let g = a2();
    let mut group = c.benchmark_group("quantum");
    group.sample_size(10);
    group.bench_function("bgg/a2_11_symbolic", |b| {
        b.iter(|| {
            let complex = BggComplex::build(Arc::new(symbolic_algebra(&g).unwrap()), &[1, 1], 8, &[]).unwrap();
            complex.analyze()
        })
    });
    group.finish();
}

criterion_group!(benches, weyl, enveloping, complexes);
criterion_main!(benches);
