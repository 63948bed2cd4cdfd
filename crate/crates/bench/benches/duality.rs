use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kduality::chain::delta_chain;
use kduality::{
    homology, smith_normal_form, verify_chain_duality, Conventions, DualityContext, IntMatrix, Poset, Variant,
    VerifyOptions,
};
use kduality_bench::{complexes, sample};
use std::sync::Arc;

fn t_and_e(c: &mut Criterion) {
    let mut group = c.benchmark_group("duality");
    for (name, k) in complexes() {
        let ctx = DualityContext::new(k);
        for v in Variant::BOTH {
            let x = sample(&ctx, v, 11);
            let id = format!("{name}/{}", v.name());
            group.bench_with_input(BenchmarkId::new("t", &id), &x, |b, x| {
                b.iter(|| ctx.t(v, black_box(x)).unwrap())
            });
            let tc = ctx.t(v, &x).unwrap();
            let t2c = ctx.t(v, &tc.complex).unwrap();
            group.bench_with_input(BenchmarkId::new("e-by-tau", &id), &x, |b, x| {
                b.iter(|| ctx.e_by_tau(v, x, &tc, &t2c, Conventions::STANDARD).unwrap())
            });
            group.bench_with_input(BenchmarkId::new("e-explicit", &id), &x, |b, x| {
                b.iter(|| ctx.e_explicit(v, x, &tc, &t2c, false))
            });
        }
    }
    group.finish();
}

fn snf(c: &mut Criterion) {
    let mut group = c.benchmark_group("homology");
    for (name, k) in complexes() {
        let ctx = DualityContext::new(k.clone());
        let cdk = ctx.cdk_chain().colim();
        group.bench_function(BenchmarkId::new("cdk-colim", name), |b| {
            b.iter(|| homology(black_box(&cdk)).unwrap())
        });
        let d = IntMatrix::from_sparse(&delta_chain(&k, Arc::new(Poset::faces(&k))).colim().boundary(1));
        group.bench_function(BenchmarkId::new("snf-d1", name), |b| {
            b.iter(|| smith_normal_form(black_box(&d)))
        });
    }
    group.finish();
}

fn suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    let opts = VerifyOptions {
        samples: 2,
        ..Default::default()
    };
    for (name, k) in complexes() {
        group.bench_function(name, |b| b.iter(|| verify_chain_duality(black_box(&k), &opts).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, t_and_e, snf, suite);
criterion_main!(benches);
