//! Exhaustive searches on a one-thread pool against the default pool. Built
//! with `--no-default-features` both variants run the sequential code path.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use topodiag_core::analysis::{cut_structure_scan, expansion_check, CutRule, SmallSide};
use topodiag_core::{build, pessimistic_diagnosability, vertex_connectivity, Graph, TopologySpec, TranspositionTree};

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    let default = rayon::ThreadPoolBuilder::new().build().expect("pool");
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("pool");
    vec![("sequential", single), ("parallel", default)]
}

fn instances() -> Vec<(String, Graph)> {
    [
        TopologySpec::AlternatingGroupNetwork { n: 6 },
        TopologySpec::TranspositionTree {
            tree: TranspositionTree::star(6).expect("tree"),
        },
        TopologySpec::AlternatingGroupGraph { n: 5 },
    ]
    .into_iter()
    .map(|s| (s.name(), build(&s).expect("graph")))
    .collect()
}

fn bench_searches(c: &mut Criterion) {
    let graphs = instances();
    let pools = pools();

    let mut group = c.benchmark_group("pessimistic_diagnosability");
    group.sample_size(10);
    for (name, g) in &graphs {
        for (mode, pool) in &pools {
            group.bench_with_input(BenchmarkId::new(*mode, name), g, |b, g| {
                b.iter(|| pool.install(|| pessimistic_diagnosability(black_box(g), u64::MAX).unwrap().tp))
            });
        }
    }
    group.finish();

    let mut group = c.benchmark_group("theorem_conditions");
    group.sample_size(10);
    for (name, g) in &graphs {
        let k = g.regular_degree().expect("regular");
        let l = g.l_max().unwrap();
        let max_u = 2 * (2 * k).saturating_sub(4 + l);
        let bound = (2 * k).saturating_sub(2 + l);
        let rule = CutRule {
            bound: bound.saturating_sub(1),
            small_side: SmallSide::Trivial,
            four_cycle_exceptions: false,
        };
        for (mode, pool) in &pools {
            group.bench_with_input(BenchmarkId::new(format!("{mode}/expansion"), name), g, |b, g| {
                b.iter(|| pool.install(|| expansion_check(black_box(g), "bench", max_u, bound, u64::MAX).status))
            });
            group.bench_with_input(BenchmarkId::new(format!("{mode}/cuts"), name), g, |b, g| {
                b.iter(|| pool.install(|| cut_structure_scan(black_box(g), "bench", &rule, max_u, u64::MAX).status))
            });
        }
    }
    group.finish();

    let mut group = c.benchmark_group("vertex_connectivity");
    for (name, g) in &graphs {
        for (mode, pool) in &pools {
            group.bench_with_input(BenchmarkId::new(*mode, name), g, |b, g| {
                b.iter(|| pool.install(|| vertex_connectivity(black_box(g)).unwrap()))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench_searches);
criterion_main!(benches);
