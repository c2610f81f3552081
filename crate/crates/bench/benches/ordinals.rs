use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use wpolab_bench::{equipotent_pairs, ordinals};
use wpolab_core::{oracle, theta_plus, theta_tilde};

fn arithmetic(c: &mut Criterion) {
    let xs = ordinals(64);
    let pairs: Vec<_> = xs.iter().zip(xs.iter().rev()).collect();
    let mut g = c.benchmark_group("cnf");
    g.bench_function("add", |b| {
        b.iter(|| {
            pairs.iter().for_each(|(x, y)| {
                black_box(x.add(y));
            })
        })
    });
    g.bench_function("mul", |b| {
        b.iter(|| {
            pairs.iter().for_each(|(x, y)| {
                black_box(x.mul(y));
            })
        })
    });
    g.bench_function("nat_add", |b| {
        b.iter(|| {
            pairs.iter().for_each(|(x, y)| {
                black_box(x.nat_add(y));
            })
        })
    });
    g.bench_function("nat_mul", |b| {
        b.iter(|| {
            pairs.iter().for_each(|(x, y)| {
                black_box(x.nat_mul(y));
            })
        })
    });
    let small = oracle::enumerate_below_power(3, 2);
    let small_pairs: Vec<_> = small.iter().zip(small.iter().rev()).collect();
    g.bench_function("nat_mul/below_w3", |b| {
        b.iter(|| {
            small_pairs.iter().for_each(|(x, y)| {
                black_box(x.nat_mul(y));
            })
        })
    });
    g.bench_function("nat_mul_oracle/below_w3", |b| {
        b.iter(|| {
            small_pairs.iter().for_each(|(x, y)| {
                black_box(oracle::nat_mul(x, y));
            })
        })
    });
    g.bench_function("parse_render", |b| {
        b.iter(|| {
            xs.iter().for_each(|x| {
                black_box(x.to_string().parse::<wpolab_core::CnfOrdinal>().unwrap());
            })
        })
    });
    g.finish();
}

fn bounds(c: &mut Criterion) {
    let pairs = equipotent_pairs(64);
    let mut g = c.benchmark_group("theta");
    g.bench_function("theta_plus", |b| {
        b.iter(|| {
            pairs.iter().for_each(|p| {
                black_box(theta_plus(p).unwrap());
            })
        })
    });
    g.bench_function("theta_tilde", |b| {
        b.iter(|| {
            pairs.iter().for_each(|p| {
                black_box(theta_tilde(p).unwrap());
            })
        })
    });
    g.finish();
}

criterion_group!(benches, arithmetic, bounds);
criterion_main!(benches);
