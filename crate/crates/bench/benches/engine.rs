use std::hint::black_box;

use bergman_core::verify::{self, VerifyConfig};
use bergman_core::{
    commutator_matrix, derived_op, reproduce, soltani_up, zhu_scan, CoeffVector, Complex64, KernelPoint, LieElement,
    QuadratureGrid, WeightParam,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gram(c: &mut Criterion) {
    let xi = WeightParam::new(0.5).unwrap();
    let op = derived_op(
        LieElement {
            a: 0.3,
            b: Complex64::new(0.7, -0.2),
        },
        xi,
    );
    let mut group = c.benchmark_group("gram_matrix");
    for n in [16usize, 24, 48] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| op.gram_matrix(xi, black_box(n)))
        });
    }
    group.finish();

    let other = derived_op(LieElement::y(), xi);
    c.bench_function("commutator_matrix/24", |b| {
        b.iter(|| commutator_matrix(&op, &other, xi, black_box(24)))
    });
}

fn quadrature(c: &mut Criterion) {
    let xi = WeightParam::new(-0.5).unwrap();
    c.bench_function("grid_build/64x256", |b| {
        b.iter(|| QuadratureGrid::new(xi, black_box(64), 256).unwrap())
    });

    let grid = QuadratureGrid::with_defaults(xi).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f = CoeffVector::random(&mut rng, 12);
    let w = KernelPoint::new(Complex64::new(0.3, 0.4)).unwrap();
    c.bench_function("reproduce/deg12", |b| {
        b.iter(|| reproduce(black_box(&f), w, &grid).unwrap())
    });
}

fn scans(c: &mut Criterion) {
    let xi = WeightParam::new(1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let f = CoeffVector::random(&mut rng, 20);
    c.bench_function("soltani_up/deg20", |b| {
        b.iter(|| soltani_up(black_box(&f), 0.5, -1.0, xi))
    });
    c.bench_function("zhu_scan/1000", |b| {
        b.iter(|| zhu_scan(black_box(1000), xi, 3, 1e-8).unwrap())
    });

    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    group.bench_function("all_suites", |b| {
        b.iter(|| verify::run(&VerifyConfig::default(), &[]).unwrap())
    });
    group.finish();
}

criterion_group!(benches, gram, quadrature, scans);
criterion_main!(benches);
