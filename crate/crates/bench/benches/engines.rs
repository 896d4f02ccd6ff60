use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use dpdp_bench::{cycles, paths, s2_sweep};
use dpdp_core::catalog::{canonical_form, enumerate_connected_multigraphs};
use dpdp_core::goodsub::find_good_subgraph;
use dpdp_core::minimality::{is_minimal_by_deletion, xcheck};
use dpdp_core::subdivision::invert_s2;
use dpdp_core::{find_dp_pair, is_dpdp};

fn dp_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_dp_pair");
    for g in cycles(&[12, 24, 36]).into_iter().chain(paths(&[13, 25, 37])) {
        let label = format!("n{}_m{}", g.vertex_count(), g.edge_count());
        group.bench_with_input(BenchmarkId::from_parameter(label), &g, |b, g| b.iter(|| find_dp_pair(black_box(g))));
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let graphs = s2_sweep(4);
    let mut group = c.benchmark_group("s2_sweep_le4");
    group.sample_size(10);
    group.bench_function("is_dpdp", |b| b.iter(|| graphs.iter().filter(|(_, g)| is_dpdp(g)).count()));
    group.bench_function("minimal_by_deletion", |b| {
        b.iter(|| graphs.iter().filter(|(_, g)| is_minimal_by_deletion(g)).count())
    });
    group.bench_function("invert_s2", |b| b.iter(|| graphs.iter().filter(|(_, g)| invert_s2(g).is_some()).count()));
    group.bench_function("find_good_subgraph", |b| {
        b.iter(|| graphs.iter().filter(|(h, _)| find_good_subgraph(h).is_some()).count())
    });
    group.bench_function("xcheck", |b| b.iter(|| graphs.iter().filter(|(h, _)| xcheck(h).unwrap().consistent).count()));
    group.finish();
}

fn catalog(c: &mut Criterion) {
    let mut group = c.benchmark_group("catalog");
    group.sample_size(10);
    group.bench_function("enumerate_multigraphs_le4", |b| b.iter(|| enumerate_connected_multigraphs(4).unwrap().len()));
    let graphs = s2_sweep(4);
    group.bench_function("canonical_form_s2_le4", |b| {
        b.iter(|| graphs.iter().map(|(_, g)| canonical_form(g).code.len()).sum::<usize>())
    });
    group.finish();
}

criterion_group!(benches, dp_search, sweep, catalog);
criterion_main!(benches);
