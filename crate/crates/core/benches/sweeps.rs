//! Comparing the parallel identity sweeps with the single-threaded
//! fallback on the largest desk-scale inputs.
//!
//! With the `parallel` feature (default), the "jobs1" variants pin a
//! one-thread pool, matching what `--jobs 1` does in the CLI; the "jobsN"
//! variants use all cores. Built with `--no-default-features` only the
//! sequential path exists and is benched alone.

use criterion::{criterion_group, criterion_main, Criterion};
use filippov_core::constructions::{gl_trace_form, simple4};
use filippov_core::cube::cube;
use filippov_core::trilie::ThreeLieAlgebra;

fn fi_sweep(a: &ThreeLieAlgebra) {
    let report = a.check_fundamental_identity();
    assert!(report.passed);
}

#[cfg(feature = "parallel")]
fn with_threads<T>(threads: usize, f: impl FnOnce() -> T + Send) -> T
where
    T: Send,
{
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("pool builds")
        .install(f)
}

fn bench_fi_sweeps(c: &mut Criterion) {
    let cube12 = cube(&simple4()).expect("simple4 is valid").carrier().clone();
    let cube27 = cube(&gl_trace_form(3))
        .expect("trace-form algebra is valid")
        .carrier()
        .clone();

    let mut group = c.benchmark_group("fundamental_identity");
    group.sample_size(10);
    for (name, alg) in [("cube_simple4_dim12", &cube12), ("cube_gl3_dim27", &cube27)] {
        #[cfg(feature = "parallel")]
        {
            group.bench_function(format!("{name}/jobs1"), |b| {
                b.iter(|| with_threads(1, || fi_sweep(alg)))
            });
            group.bench_function(format!("{name}/jobsN"), |b| b.iter(|| fi_sweep(alg)));
        }
        #[cfg(not(feature = "parallel"))]
        group.bench_function(format!("{name}/sequential"), |b| b.iter(|| fi_sweep(alg)));
    }
    group.finish();
}

fn bench_derivation_solver(c: &mut Criterion) {
    let a = simple4();
    c.bench_function("derivation_algebra/simple4", |b| {
        b.iter(|| {
            let basis = a.derivation_algebra();
            assert_eq!(basis.len(), 6);
        })
    });
}

criterion_group!(benches, bench_fi_sweeps, bench_derivation_solver);
criterion_main!(benches);
