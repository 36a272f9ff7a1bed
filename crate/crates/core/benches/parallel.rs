//! Data-parallel kernels on the default rayon pool against a one-thread
//! pool. Build with `--no-default-features` to time the plain iterator path.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;
use rayon::ThreadPoolBuilder;
use similattice::conformal::{map_set, MapSpec};
use similattice::quasilattice::{generate_quasilattice, verify_self_similarity};
use similattice::symmetry::{orbit_with_budget, parse_symbol, Similarity2D};
use similattice::tiling::{color_symmetry_check, edges_by_nearest_neighbors, ColorScheme, Tiling};

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    let mut pools = vec![("one_thread", ThreadPoolBuilder::new().num_threads(1).build().unwrap())];
    if similattice::is_parallel() {
        pools.push(("all_threads", ThreadPoolBuilder::new().build().unwrap()));
    }
    pools
}

fn kernels(c: &mut Criterion) {
    let set = generate_quasilattice(12, 1, 4.0, 1e-9).unwrap();
    let origin = Complex64::new(0.0, 0.0);
    let tiling = Tiling::new(set.embedded().to_vec(), 12, origin, None, 1e-9)
        .unwrap()
        .with_colors(ColorScheme::TwoChecker)
        .unwrap();
    let rotation = Similarity2D::rotation(std::f64::consts::TAU / 6.0, origin);
    let group = parse_symbol("10mL(φ=π/5)").unwrap();
    let seeds = [Complex64::new(1.1, 0.3), Complex64::new(0.4, -0.9)];
    let label = if similattice::is_parallel() {
        "rayon"
    } else {
        "sequential_build"
    };

    let mut g = c.benchmark_group(format!("kernels_{label}"));
    g.sample_size(10);
    for (name, pool) in pools() {
        g.bench_function(BenchmarkId::new("generate_n12", name), |b| {
            b.iter(|| pool.install(|| generate_quasilattice(12, 1, black_box(3.0), 1e-9).unwrap()))
        });
        g.bench_function(BenchmarkId::new("self_similarity_n8", name), |b| {
            let q8 = generate_quasilattice(8, 1, 3.0, 1e-9).unwrap();
            b.iter(|| pool.install(|| verify_self_similarity(black_box(&q8)).unwrap()))
        });
        g.bench_function(BenchmarkId::new("inversion_map", name), |b| {
            b.iter(|| pool.install(|| map_set(&MapSpec::InversionUnitCircle, black_box(&set))))
        });
        g.bench_function(BenchmarkId::new("nearest_neighbour_edges", name), |b| {
            b.iter(|| pool.install(|| edges_by_nearest_neighbors(black_box(set.embedded()), 1.05).unwrap()))
        });
        g.bench_function(BenchmarkId::new("color_symmetry", name), |b| {
            b.iter(|| pool.install(|| color_symmetry_check(black_box(&tiling), &rotation, &[0, 1])))
        });
        g.bench_function(BenchmarkId::new("orbit", name), |b| {
            b.iter(|| pool.install(|| orbit_with_budget(&group, black_box(&seeds), 200_000).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, kernels);
criterion_main!(benches);
