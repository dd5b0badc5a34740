//! Field kernels under the default rayon pool and under a single-thread
//! pool. Build with `--no-default-features` for the sequential fallback.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use swlift::kaluza_klein::{dirac_y_frame, dirac_y_reduced, lift, residual_decomposition_check, KKGeometry};
use swlift::seiberg_witten::{random_configuration, sw_residual, vjp};
use swlift::torus::{dirac_x, Grid4};
use swlift::Charge;

fn modes() -> Vec<(&'static str, Option<usize>)> {
    if cfg!(feature = "parallel") {
        vec![("parallel", None), ("one-thread", Some(1))]
    } else {
        vec![("sequential", None)]
    }
}

fn in_mode<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    if let Some(t) = threads {
        return rayon::ThreadPoolBuilder::new().num_threads(t).build().expect("pool").install(f);
    }
    let _ = threads;
    f()
}

fn kernels(c: &mut Criterion) {
    let mut group = c.benchmark_group("kernels");
    group.sample_size(10);
    for n in [8usize, 16] {
        let g = Grid4::new(n).unwrap();
        let cfg = random_configuration(g, Charge::HALF, 1, 2).unwrap();
        let geom = KKGeometry::for_config(&cfg, 1.0).unwrap();
        let psi = lift(&cfg.phi, cfg.q);
        let res = sw_residual(&cfg).unwrap();
        for (mode, threads) in modes() {
            group.bench_with_input(BenchmarkId::new(format!("dirac_x/{mode}"), n), &n, |b, _| {
                b.iter(|| in_mode(threads, || dirac_x(&cfg.a, cfg.q, black_box(&cfg.phi)).unwrap()))
            });
            group.bench_with_input(BenchmarkId::new(format!("sw_residual/{mode}"), n), &n, |b, _| {
                b.iter(|| in_mode(threads, || sw_residual(black_box(&cfg)).unwrap()))
            });
            group.bench_with_input(BenchmarkId::new(format!("vjp/{mode}"), n), &n, |b, _| {
                b.iter(|| in_mode(threads, || vjp(black_box(&cfg), &res).unwrap()))
            });
            group.bench_with_input(BenchmarkId::new(format!("dirac_y_reduced/{mode}"), n), &n, |b, _| {
                b.iter(|| in_mode(threads, || dirac_y_reduced(black_box(&psi), &geom).unwrap()))
            });
            if n == 8 {
                group.bench_with_input(BenchmarkId::new(format!("dirac_y_frame/{mode}"), n), &n, |b, _| {
                    b.iter(|| in_mode(threads, || dirac_y_frame(black_box(&psi), &geom).unwrap()))
                });
                group.bench_with_input(BenchmarkId::new(format!("decomposition/{mode}"), n), &n, |b, _| {
                    b.iter(|| in_mode(threads, || residual_decomposition_check(black_box(&cfg), &geom).unwrap()))
                });
            }
        }
    }
    group.finish();
}

criterion_group!(benches, kernels);
criterion_main!(benches);
