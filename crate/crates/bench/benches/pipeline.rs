use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use engel_bench::{graph, CUBIC, MIXED, PERTURBED};
use engel_core::pipeline::{classify, AnalysisOptions};
use engel_core::Branch;

fn classification(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify");
    group.sample_size(20);
    for (name, input) in [("cubic", CUBIC), ("perturbed", PERTURBED), ("mixed", MIXED)] {
        let g = graph(input);
        group.bench_function(name, |b| b.iter(|| classify(black_box(&g), Branch::Plus, 0, AnalysisOptions::default()).unwrap()));
    }
    let g = graph(PERTURBED);
    group.bench_function("perturbed without checks", |b| {
        b.iter(|| classify(black_box(&g), Branch::Plus, 0, AnalysisOptions { checks: false, explicit: false }).unwrap())
    });
    group.finish();
}

criterion_group!(benches, classification);
criterion_main!(benches);
