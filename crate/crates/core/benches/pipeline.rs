//! Complex construction and homology on a one-thread pool against the default pool.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use homforge_core::complexes::{build_complex, BuildOptions, ComplexKind};
use homforge_core::milnor::milnor_group;

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("pool");
    let all = rayon::ThreadPoolBuilder::new().build().expect("pool");
    vec![("sequential", one), ("parallel", all)]
}

fn build(c: &mut Criterion) {
    let mut g = c.benchmark_group("build D n=4 q=5 through degree 6");
    g.sample_size(10);
    for (name, pool) in pools() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| pool.install(|| build_complex(ComplexKind::D, 4, 5, 6, &BuildOptions::default()).unwrap()))
        });
    }
    g.finish();
}

fn homology(c: &mut Criterion) {
    let mut g = c.benchmark_group("H_5 of C n=4 q=7");
    g.sample_size(10);
    for (name, pool) in pools() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                pool.install(|| {
                    let cx = build_complex(ComplexKind::C, 4, 7, 6, &BuildOptions::default()).unwrap();
                    cx.homology(5).unwrap()
                })
            })
        });
    }
    g.finish();
}

fn milnor(c: &mut Criterion) {
    let mut g = c.benchmark_group("K_2 of F_11");
    g.sample_size(10);
    for (name, pool) in pools() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| pool.install(|| milnor_group(11, 2, 50_000).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, build, homology, milnor);
criterion_main!(benches);
