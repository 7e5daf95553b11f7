//! Sequential against parallel execution on the data-parallel workloads.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use queuelab::census::{labelled_qn_table, Census};
use queuelab::experiment::{run_experiment, ExperimentConfig};
use queuelab::layout::{exact_queue_number_with, SearchOptions};
use queuelab::randreg::gen_regular_batch;
use queuelab::{Execution, LabelledGraph};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn census(c: &mut Criterion) {
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    for (name, execution) in MODES {
        let census = Census { execution, ..Census::default() };
        group.bench_with_input(BenchmarkId::new("queues_n6", name), &census, |b, cs| {
            b.iter(|| cs.enumerate_queues(black_box(6)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("rainbow_table_n5", name), &census, |b, cs| {
            b.iter(|| cs.rainbow_table(black_box(5)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("labelled_qn_n5", name), &census, |b, cs| {
            b.iter(|| labelled_qn_table(cs, black_box(5)).unwrap())
        });
    }
    group.finish();
}

fn layout(c: &mut Criterion) {
    let mut group = c.benchmark_group("layout");
    group.sample_size(10);
    let k8 = LabelledGraph::complete(8);
    for (name, execution) in MODES {
        let opts = SearchOptions { execution, ..SearchOptions::default() };
        group.bench_with_input(BenchmarkId::new("exact_k8", name), &opts, |b, o| {
            b.iter(|| exact_queue_number_with(black_box(&k8), o).unwrap())
        });
    }
    group.finish();
}

fn sampling(c: &mut Criterion) {
    let mut group = c.benchmark_group("sampling");
    group.sample_size(10);
    for (name, execution) in MODES {
        group.bench_function(BenchmarkId::new("regular_batch_n200", name), |b| {
            b.iter(|| gen_regular_batch(200, 3, black_box(1), 256, execution))
        });
        let config = ExperimentConfig { execution, ..ExperimentConfig::new(3, vec![8, 10, 12], 4, 1) };
        group.bench_function(BenchmarkId::new("experiment", name), |b| b.iter(|| run_experiment(&config).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, census, layout, sampling);
criterion_main!(benches);
