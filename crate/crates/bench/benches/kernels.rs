use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use secnet_core::analytic::analytic_sop;
use secnet_core::montecarlo::{estimate_sop, McOptions};
use secnet_core::quadrature::{jam_integral, q_z};
use secnet_core::specfun::{hyp2f1, reg_lower_gamma};
use secnet_core::{dgr_sop, sop_oracle_numeric, DgrInputs, GammaParams, NetworkConfig, Scenario};

fn special_functions(c: &mut Criterion) {
    c.bench_function("hyp2f1 direct x=0.4", |b| {
        b.iter(|| hyp2f1(1.0, black_box(20.7), 21.0, black_box(0.4)))
    });
    c.bench_function("hyp2f1 euler x=0.99", |b| {
        b.iter(|| hyp2f1(1.0, black_box(20.7), 21.0, black_box(0.99)))
    });
    c.bench_function("reg_lower_gamma", |b| b.iter(|| reg_lower_gamma(black_box(2.5), black_box(3.0))));
}

fn closed_form(c: &mut Criterion) {
    let inp = DgrInputs::new(
        GammaParams::new(0.7, 5.2e-6).unwrap(),
        GammaParams::new(5.0, 0.84).unwrap(),
        1.0e-5,
    )
    .unwrap();
    c.bench_function("dgr_sop", |b| b.iter(|| dgr_sop(black_box(&inp))));
    c.bench_function("sop_oracle_numeric", |b| b.iter(|| sop_oracle_numeric(black_box(&inp))));
}

fn quadrature(c: &mut Criterion) {
    let sc = Scenario::from_config(&NetworkConfig::default()).unwrap();
    c.bench_function("q_z(2)", |b| b.iter(|| q_z(2, black_box(&sc), sc.eve)));
    c.bench_function("jam_integral(2)", |b| b.iter(|| jam_integral(2, black_box(&sc))));
    c.bench_function("analytic pipeline", |b| b.iter(|| analytic_sop(black_box(&sc))));
}

fn simulation(c: &mut Criterion) {
    let sc = Scenario::from_config(&NetworkConfig::default()).unwrap();
    let mut group = c.benchmark_group("monte carlo");
    group.sample_size(10);
    group.bench_function("estimate_sop 10k trials", |b| {
        b.iter(|| estimate_sop(black_box(&sc), &McOptions::new(10_000, 1)))
    });
    group.finish();
}

criterion_group!(benches, special_functions, closed_form, quadrature, simulation);
criterion_main!(benches);
