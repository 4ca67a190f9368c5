use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use gex_bench::GENERA;
use gex_core::{angles, build_cusp_torus, build_triangulation, exhaustive_slope_audit, tet_volume};

fn volume(c: &mut Criterion) {
    let mut group = c.benchmark_group("tet_volume_1e-8");
    for g in GENERA {
        let a = angles(g).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(g), &a, |b, a| {
            b.iter(|| tet_volume(a, 1e-8).unwrap())
        });
    }
    group.finish();
}

fn cusp(c: &mut Criterion) {
    let mut group = c.benchmark_group("cusp_torus");
    for g in GENERA {
        let a = angles(g).unwrap();
        let t = build_triangulation(g).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(g), &(t, a), |b, (t, a)| {
            b.iter(|| build_cusp_torus(t, a).unwrap())
        });
    }
    group.finish();
}

fn slopes(c: &mut Criterion) {
    let mut group = c.benchmark_group("slope_audit_bound_100");
    for g in GENERA {
        let ct = build_cusp_torus(&build_triangulation(g).unwrap(), &angles(g).unwrap()).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(g), &ct, |b, ct| {
            b.iter(|| exhaustive_slope_audit(ct, 100).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, volume, cusp, slopes);
criterion_main!(benches);
