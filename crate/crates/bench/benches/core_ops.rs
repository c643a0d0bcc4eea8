use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use umbral_core::families::{bernoulli_order_pair, hb_pair, hb_table};
use umbral_core::identity::{verify_grid, GridSpec, IdentityId};
use umbral_core::rational::{rat, rat_int};
use umbral_core::series::TruncatedSeries;
use umbral_core::umbral::connection_matrix;

fn series_ops(c: &mut Criterion) {
    let n = 32;
    let a = TruncatedSeries::from_fn(n, |i| rat(i as i64 + 1, 3));
    let b = TruncatedSeries::exp_t(&rat(-2, 5), n);
    c.bench_function("series_mul_32", |bench| bench.iter(|| &a * &b));
    c.bench_function("series_div_32", |bench| bench.iter(|| a.div(&b).unwrap()));

    let delta = TruncatedSeries::expm1(24);
    c.bench_function("series_revert_24", |bench| {
        bench.iter(|| delta.revert().unwrap())
    });
    let li = umbral_core::families::polylog_series(2, 24);
    c.bench_function("series_compose_24", |bench| {
        bench.iter(|| li.compose(&delta).unwrap())
    });
}

fn family_tables(c: &mut Criterion) {
    let nu = rat(1, 2);
    c.bench_function("hb_table_24", |bench| {
        bench.iter(|| hb_table(24, &nu, -2).unwrap())
    });
}

fn connections(c: &mut Criterion) {
    let nu = rat(1, 2);
    let source = hb_pair(&nu, 2, 17).unwrap();
    let target = bernoulli_order_pair(3, 17);
    c.bench_function("connection_matrix_16", |bench| {
        bench.iter(|| connection_matrix(&source, &target, 16).unwrap())
    });
}

fn verifier(c: &mut Criterion) {
    let grid = GridSpec {
        n_max: 12,
        nu_values: vec![rat_int(1)],
        k_values: vec![-1, 2],
        r_values: vec![2],
        lambda_values: vec![rat_int(2)],
    };
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    group.bench_function("recurrence39_n12", |bench| {
        bench.iter_batched(
            || grid.clone(),
            |g| verify_grid(&[IdentityId::Recurrence39], &g, None).unwrap(),
            BatchSize::SmallInput,
        )
    });
    group.bench_function("biorthogonality_n12", |bench| {
        bench.iter_batched(
            || grid.clone(),
            |g| verify_grid(&[IdentityId::Biorthogonality], &g, None).unwrap(),
            BatchSize::SmallInput,
        )
    });
    group.finish();
}

criterion_group!(benches, series_ops, family_tables, connections, verifier);
criterion_main!(benches);
