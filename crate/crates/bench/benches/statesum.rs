use criterion::{criterion_group, criterion_main, Criterion};
use spindex_bench::fig8;
use spindex_core::statesum::{fkb_limit, tv_n};
use spindex_core::surfaces::index_series;

fn state_sums(c: &mut Criterion) {
    let two = fig8(2);
    let three = fig8(3);
    let mut g = c.benchmark_group("statesum");
    g.sample_size(10);
    g.bench_function("tv_16_fig8_2tet", |b| b.iter(|| tv_n(&two, 16, 11)));
    g.bench_function("fkb_fig8_2tet_prec11", |b| b.iter(|| fkb_limit(&two, 11, 40).unwrap()));
    g.bench_function("fkb_fig8_3tet_prec11", |b| {
        b.iter(|| fkb_limit(&three, 11, 40).unwrap())
    });
    g.finish();
}

fn normal_surfaces(c: &mut Criterion) {
    let two = fig8(2);
    let three = fig8(3);
    let mut g = c.benchmark_group("surfaces");
    g.sample_size(10);
    g.bench_function("index_fig8_2tet_prec11", |b| {
        b.iter(|| index_series(&two, 11, 12).unwrap())
    });
    g.bench_function("index_fig8_3tet_prec11", |b| {
        b.iter(|| index_series(&three, 11, 12).unwrap())
    });
    g.finish();
}

criterion_group!(benches, state_sums, normal_surfaces);
criterion_main!(benches);
