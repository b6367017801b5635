use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pvi_tau::analysis::{run_grid, GridCheck, DEFAULT_BUDGET};
use pvi_tau::modular::{run_suite, SuiteConfig};
use pvi_tau::taulattice::Lattice;
use pvi_tau::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

/// Residual evaluation over a warm lattice, so only the data-parallel part is timed.
fn grid_residuals(c: &mut Criterion) {
    let mut g = c.benchmark_group("grid");
    g.sample_size(10);
    for check in [GridCheck::Pvi, GridCheck::Qd] {
        for (name, exec) in MODES {
            let lat = Lattice::with_execution(exec);
            run_grid(&lat, 1, check, DEFAULT_BUDGET).expect("grid closes");
            g.bench_with_input(BenchmarkId::new(format!("{check:?}"), name), &lat, |b, lat| {
                b.iter(|| run_grid(lat, 1, check, DEFAULT_BUDGET).unwrap())
            });
        }
    }
    g.finish();
}

fn modular_suite(c: &mut Criterion) {
    let mut g = c.benchmark_group("modular");
    g.sample_size(10);
    for (name, exec) in MODES {
        let cfg = SuiteConfig { digits: 40, tolerance: 1e-25, points: 4, execution: exec, ..SuiteConfig::default() };
        g.bench_function(name, |b| b.iter(|| run_suite(&cfg).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, grid_residuals, modular_suite);
criterion_main!(benches);
