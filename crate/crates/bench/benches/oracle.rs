use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use engel_bench::{graph, PERTURBED};
use engel_cli::oracle::{run_oracle, OracleConfig};
use engel_core::pipeline::{run_exact, AnalysisOptions, ExactRun};
use engel_core::Branch;

fn jet_oracle(c: &mut Criterion) {
    let g = graph(PERTURBED);
    let ExactRun::Analyzed(exact) = run_exact(&g, Branch::Plus, AnalysisOptions { checks: false, explicit: false }).unwrap() else {
        panic!("fixture is class II");
    };
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for order in [6, 8] {
        let cfg = OracleConfig { points: 4, order, ..OracleConfig::default() };
        group.bench_function(format!("4 points at order {order}"), |b| b.iter(|| run_oracle(black_box(&g), &exact, cfg).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, jet_oracle);
criterion_main!(benches);
