use criterion::{black_box, criterion_group, criterion_main, Criterion};

use minksurf_bench::{helix_surface, pseudocircle_surface};
use minksurf_core::construct::{construct_constant_k_profile, RSpec};
use minksurf_core::curve::Ambient;
use minksurf_core::rotational::chen_classify;
use minksurf_core::surface::{analyze_point, gauss_curvature_intrinsic, Tolerances};

fn bench_invariant_pipeline(c: &mut Criterion) {
    let surface = helix_surface();
    let tols = Tolerances::default();
    c.bench_function("analyze_point", |b| {
        b.iter(|| analyze_point(&surface, black_box(0.37), black_box(0.81), &tols).unwrap())
    });
}

fn bench_gauss_oracle(c: &mut Criterion) {
    let surface = pseudocircle_surface();
    c.bench_function("gauss_intrinsic", |b| {
        b.iter(|| gauss_curvature_intrinsic(&surface, black_box(0.3), black_box(0.2)).unwrap())
    });
}

fn bench_classification(c: &mut Criterion) {
    let surface = helix_surface();
    c.bench_function("chen_classify_64", |b| {
        b.iter(|| chen_classify(surface.profile(), black_box(64), None).unwrap())
    });
}

fn bench_constant_k_construction(c: &mut Criterion) {
    c.bench_function("construct_constant_k", |b| {
        b.iter(|| {
            construct_constant_k_profile(
                Ambient::Hyperbolic,
                &RSpec::Const(1.0),
                black_box(-1.0),
                (0.0, 1.0),
                1e-3,
                1.0,
            )
            .unwrap()
        })
    });
}

criterion_group!(
    kernels,
    bench_invariant_pipeline,
    bench_gauss_oracle,
    bench_classification,
    bench_constant_k_construction
);
criterion_main!(kernels);
