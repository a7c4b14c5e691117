use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use teq_core::classify::is_totally_equimodular;
use teq_core::cone::TeCone;
use teq_core::hilbert::{hilbert_basis_te_cone, zonotope_points};
use teq_core::hunt::enumerate_thick_interlaces;
use teq_core::triangulate::triangulate_te_cone;
use teq_core::fixtures;

fn kernels(c: &mut Criterion) {
    let c6 = fixtures::conjecture6();
    let cone6 = TeCone::new(c6.clone()).unwrap();
    let fig = fixtures::figure1();

    c.bench_function("det 6x6", |b| b.iter(|| black_box(&c6).det().unwrap()));
    c.bench_function("te test figure1", |b| b.iter(|| is_totally_equimodular(black_box(&fig))));
    c.bench_function("zonotope 6x6", |b| b.iter(|| zonotope_points(black_box(&cone6))));
    c.bench_function("hilbert 6x6", |b| b.iter(|| hilbert_basis_te_cone(black_box(&cone6)).unwrap()));

    let mut g = c.benchmark_group("slow");
    g.sample_size(10);
    g.bench_function("triangulate 6x6", |b| b.iter(|| triangulate_te_cone(black_box(&cone6)).unwrap()));
    g.bench_function("hunt 4", |b| b.iter(|| enumerate_thick_interlaces(4).unwrap()));
    g.bench_function("hunt 6", |b| b.iter(|| enumerate_thick_interlaces(6).unwrap()));
    g.finish();
}

criterion_group!(benches, kernels);
criterion_main!(benches);
