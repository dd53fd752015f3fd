use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use posroot::criterion::{certify_derivative, certify_moment};
use posroot::symfun::{power_sums_from_elementary, ElementarySequence};
use posroot::{CertifyConfig, FunctionSpec, LambdaPolicy, RhoPolicy};
use posroot_bench::{alternating_elementary, exact_catalog};

fn newton(c: &mut Criterion) {
    let mut g = c.benchmark_group("newton");
    for k in [8, 16, 32] {
        let seq = ElementarySequence::new(alternating_elementary(k)).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(k), &seq, |b, s| {
            b.iter(|| power_sums_from_elementary(black_box(s), k).unwrap())
        });
    }
    g.finish();
}

fn exact_certificates(c: &mut Criterion) {
    let cfg = CertifyConfig::default().with_grid(12);
    let mut g = c.benchmark_group("exact");
    for spec in exact_catalog() {
        g.bench_function(format!("moment/{}", spec.id()), |b| {
            b.iter(|| certify_moment(&spec, &cfg, &LambdaPolicy::PowerSumBound).unwrap())
        });
        g.bench_function(format!("derivative/{}", spec.id()), |b| {
            b.iter(|| certify_derivative(&spec, &cfg, &RhoPolicy::PowerSumBound).unwrap())
        });
    }
    g.finish();
}

fn float_certificates(c: &mut Criterion) {
    let mut g = c.benchmark_group("float");
    g.sample_size(10);
    for prec in [256, 512] {
        let cfg = CertifyConfig::default().with_grid(12).with_precision(prec);
        g.bench_with_input(BenchmarkId::new("riemann-xi", prec), &cfg, |b, cfg| {
            b.iter(|| {
                certify_moment(&FunctionSpec::riemann_xi(), cfg, &LambdaPolicy::ZeroTable).unwrap()
            })
        });
        g.bench_with_input(BenchmarkId::new("airy", prec), &cfg, |b, cfg| {
            b.iter(|| {
                certify_moment(&FunctionSpec::airy(), cfg, &LambdaPolicy::PowerSumBound).unwrap()
            })
        });
    }
    g.finish();
}

criterion_group!(benches, newton, exact_certificates, float_certificates);
criterion_main!(benches);
