use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use llab_bench::{n24_member, regular_chains, uniform};
use llab_core::conjecture::{check_form11, enumerate_lc, EnumerateOptions, Method};
use llab_core::cyclotomic::factor_cyclotomic;
use llab_core::etransform::normalize_chain;
use llab_core::powersums::{newton_power_sums, power_sums_from_exponents};
use llab_core::ramanujan::ramanujan_sum;

fn enumeration(c: &mut Criterion) {
    let opts = EnumerateOptions::default();
    let mut g = c.benchmark_group("enumerate");
    g.sample_size(10);
    g.bench_function("naive N=20", |b| {
        b.iter(|| enumerate_lc(black_box(20), Method::Naive, &opts))
    });
    g.bench_function("structured N=24", |b| {
        b.iter(|| enumerate_lc(black_box(24), Method::Structured, &opts))
    });
    g.finish();
}

fn factoring(c: &mut Criterion) {
    let p = n24_member();
    assert!(factor_cyclotomic(&p, 24).is_ok());
    c.bench_function("factor_cyclotomic N=24", |b| {
        b.iter(|| factor_cyclotomic(black_box(&p), 24))
    });
    let q = uniform(24);
    c.bench_function("check_form11 N=24", |b| b.iter(|| check_form11(black_box(&q))));
}

fn power_sums(c: &mut Criterion) {
    let p = n24_member();
    let ev = factor_cyclotomic(&p, 24).expect("cyclotomic fixture");
    c.bench_function("newton_power_sums N=24", |b| {
        b.iter(|| newton_power_sums(black_box(&p)))
    });
    c.bench_function("power_sums_from_exponents N=24", |b| {
        b.iter(|| power_sums_from_exponents(black_box(&ev)))
    });
    c.bench_function("ramanujan_sum d,k <= 64", |b| {
        b.iter(|| {
            let mut acc = 0i64;
            for d in 1..=64 {
                for k in 1..=64 {
                    acc += ramanujan_sum(black_box(d), black_box(k));
                }
            }
            acc
        })
    });
}

fn normalization(c: &mut Criterion) {
    let chains = regular_chains(5);
    c.bench_function("normalize_chain all t=5", |b| {
        b.iter(|| {
            chains
                .iter()
                .map(|ch| normalize_chain(black_box(ch)).map_or(0, |p| p.len()))
                .sum::<usize>()
        })
    });
}

criterion_group!(benches, enumeration, factoring, power_sums, normalization);
criterion_main!(benches);
