use std::time::Duration;

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use w2pack::drp::{drp, DrpParams, DrpPreset};
use w2pack::mwis::{exact_mwis_bb, MwisSolverKind, MwisSolverSpec};
use w2pack::peel::{red_w2pack, PeelConfig};
use w2pack::reductions::ConfigName;
use w2pack::{reduce_and_transform, LinkGraph};
use w2pack_bench::{grid_hybrid, sparse_uniform};

fn reduce_configs(c: &mut Criterion) {
    let g = sparse_uniform(5000, 3.0, 1);
    let mut group = c.benchmark_group("reduce_and_transform");
    group.sample_size(10);
    for config in ConfigName::ALL {
        group.bench_with_input(BenchmarkId::from_parameter(config), &config, |b, &config| {
            b.iter(|| reduce_and_transform(black_box(g.clone()), config, 0))
        });
    }
    group.finish();
}

fn peeling(c: &mut Criterion) {
    let mut group = c.benchmark_group("red_w2pack");
    group.sample_size(10);
    for (name, g) in [("sparse-2000", sparse_uniform(2000, 4.0, 2)), ("grid-40x40", grid_hybrid(40, 40))] {
        group.bench_function(name, |b| b.iter(|| red_w2pack(black_box(&g), &PeelConfig::default())));
    }
    group.finish();
}

fn exact_core(c: &mut Criterion) {
    let g = sparse_uniform(300, 3.0, 3);
    let (inst, _, _) = reduce_and_transform(g, ConfigName::Strong, 0);
    let spec = MwisSolverSpec::new(MwisSolverKind::ExactBB, Duration::from_secs(30), 0);
    c.bench_function("exact_mwis_bb/strong-kernel-300", |b| {
        b.iter(|| exact_mwis_bb(black_box(&inst.graph), &spec))
    });
}

fn drp_presets(c: &mut Criterion) {
    let g = sparse_uniform(1000, 3.0, 4);
    let mut group = c.benchmark_group("drp");
    group.sample_size(10);
    for preset in DrpPreset::ALL {
        let params = DrpParams::preset(preset)
            .with_time_limit(Duration::from_secs(10))
            .with_work_limits(20, 2000);
        group.bench_function(preset.name(), |b| b.iter(|| drp(black_box(&g), &params)));
    }
    group.finish();
}

fn square_graph(c: &mut Criterion) {
    let lg = LinkGraph::from_graph(sparse_uniform(20000, 3.0, 5));
    c.bench_function("square/sparse-20000", |b| b.iter(|| w2pack::square(black_box(&lg))));
}

criterion_group!(benches, reduce_configs, peeling, exact_core, drp_presets, square_graph);
criterion_main!(benches);
