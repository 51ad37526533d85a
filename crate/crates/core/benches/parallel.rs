use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hopfcalc_core::autos::{build_quadric_auto, orbit_probe, QuadricAutoParams, QuadricVariant, DEFAULT_EPSILON};
use hopfcalc_core::gauss::{from_int, from_ratio};
use hopfcalc_core::link::{brute_force_oracle, char_divisor_by_subsets};
use hopfcalc_core::milnor::{milnor_number_by_enumeration, weight_spectrum};
use hopfcalc_core::{Exec, ExponentVector};
use num_complex::Complex64;

const CAP: u64 = 100_000_000;
const PATHS: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn ev(a: &[u64]) -> ExponentVector {
    ExponentVector::new(a.to_vec()).unwrap()
}

fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("brute_force_oracle");
    g.sample_size(10);
    for a in [ev(&[7, 11, 13, 17, 19]), ev(&[3, 5, 7, 11, 13, 4, 6])] {
        for (name, exec) in PATHS {
            g.bench_with_input(BenchmarkId::new(name, &a), &a, |b, a| {
                b.iter(|| brute_force_oracle(black_box(a), CAP, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    let a = ev(&[6, 10, 15, 21, 8]);
    let mut g = c.benchmark_group("basis_enumeration");
    g.sample_size(10);
    for (name, exec) in PATHS {
        g.bench_function(BenchmarkId::new("weight_spectrum", name), |b| {
            b.iter(|| weight_spectrum(black_box(&a), exec, CAP).unwrap())
        });
        g.bench_function(BenchmarkId::new("milnor_number_by_enumeration", name), |b| {
            b.iter(|| milnor_number_by_enumeration(black_box(&a), exec, CAP).unwrap())
        });
    }
    g.finish();
}

fn subsets(c: &mut Criterion) {
    let a = ev(&[2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17]);
    let mut g = c.benchmark_group("char_divisor_by_subsets");
    g.sample_size(10);
    for (name, exec) in PATHS {
        g.bench_function(name, |b| b.iter(|| char_divisor_by_subsets(black_box(&a), exec).unwrap()));
    }
    g.finish();
}

fn probe(c: &mut Criterion) {
    let p = QuadricAutoParams::new(
        6,
        from_ratio(1, 2),
        from_ratio(2, 3),
        vec![from_int(0), from_int(1), from_ratio(1, 3)],
        QuadricVariant::Corrected,
    )
    .unwrap();
    let map = build_quadric_auto(&p);
    let samples: Vec<Vec<Complex64>> = (0..2000)
        .map(|k| (0..6).map(|i| Complex64::new(((k * 7 + i * 3) % 11) as f64 / 11.0, ((k + i) % 5) as f64 / 10.0)).collect())
        .collect();
    let mut g = c.benchmark_group("orbit_probe");
    g.sample_size(10);
    for (name, exec) in PATHS {
        g.bench_function(name, |b| b.iter(|| orbit_probe(&map, black_box(&samples), 60, DEFAULT_EPSILON, exec)));
    }
    g.finish();
}

criterion_group!(benches, oracle, enumeration, subsets, probe);
criterion_main!(benches);
