use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use thermoprior::schemes::{classify_numeric, prior_expansion, prior_moments};
use thermoprior::series::ratio;
use thermoprior::verify::run_verification;
use thermoprior::{elementary, registry, Elementary, ModelId, Scheme, ThermalModel};

fn series(c: &mut Criterion) {
    let mut g = c.benchmark_group("series");
    for order in [12, 16, 24] {
        g.bench_with_input(BenchmarkId::new("coth", order), &order, |b, &n| {
            b.iter(|| elementary(Elementary::Coth, black_box(n)))
        });
        let sech = elementary(Elementary::Sech, order);
        g.bench_with_input(BenchmarkId::new("pow 3/2", order), &sech, |b, s| {
            b.iter(|| s.pow_rational(&ratio(3, 2)).unwrap())
        });
    }
    g.finish();
}

fn expansions(c: &mut Criterion) {
    let mut g = c.benchmark_group("prior_expansion");
    for m in registry() {
        let s = m.primary_scheme();
        g.bench_function(format!("{} order 12", m.id().label()), |b| {
            b.iter(|| prior_expansion(black_box(&m), s, 12).unwrap())
        });
    }
    g.finish();
}

fn numerics(c: &mut Criterion) {
    let m2 = ThermalModel::new(ModelId::DisplacedThermalQuantum);
    let m6 = ThermalModel::new(ModelId::SpinOneExtended);
    c.bench_function("moments M2", |b| {
        b.iter(|| prior_moments(&m2, Scheme::Quantum).unwrap())
    });
    c.bench_function("classify numeric M6", |b| {
        b.iter(|| classify_numeric(&m6, Scheme::Lavenda).unwrap())
    });
    let mut g = c.benchmark_group("report");
    g.sample_size(10);
    g.bench_function("run_verification", |b| b.iter(|| run_verification(12, 1e-9).unwrap()));
    g.finish();
}

criterion_group!(benches, series, expansions, numerics);
criterion_main!(benches);
