use std::hint::black_box;

use coorbit_bench::fixture_input;
use coorbit_core::numeric::{orbit_sample, SampleParams};
use coorbit_core::spectrum::exponentiality_status;
use coorbit_core::{charpoly, classify, stabilizer};
use criterion::{criterion_group, criterion_main, Criterion};

fn exact(c: &mut Criterion) {
    let (six, ell_bs) = fixture_input("paper-6dim", "ell_BS");
    let (five, ell_x3) = fixture_input("paper-5dim", "ell_X3");
    let (fili, ell_x4) = fixture_input("filiform4", "ell_X4");

    c.bench_function("classify paper-6dim", |b| {
        b.iter(|| classify(black_box(&six), black_box(&ell_bs)).unwrap())
    });
    c.bench_function("classify paper-5dim", |b| {
        b.iter(|| classify(black_box(&five), black_box(&ell_x3)).unwrap())
    });
    c.bench_function("classify filiform4", |b| {
        b.iter(|| classify(black_box(&fili), black_box(&ell_x4)).unwrap())
    });
    c.bench_function("stabilizer paper-6dim", |b| {
        b.iter(|| stabilizer(black_box(&six), black_box(&ell_bs)).unwrap())
    });

    let x: Vec<_> = ell_bs
        .coeffs()
        .iter()
        .map(|c| c + coorbit_core::rational::ratio(3, 7))
        .collect();
    let ad = six.ad_matrix(&x).unwrap();
    c.bench_function("charpoly 6x6", |b| b.iter(|| charpoly(black_box(&ad)).unwrap()));
}

fn spectrum(c: &mut Criterion) {
    let (six, _) = fixture_input("paper-6dim", "ell_BS");
    let (e2, _) = fixture_input("e2-cover", "ell_X");
    let mut group = c.benchmark_group("exponentiality");
    group.sample_size(20);
    group.bench_function("paper-6dim, 200 samples", |b| {
        b.iter(|| exponentiality_status(black_box(&six), 200, 0).unwrap())
    });
    group.bench_function("e2-cover refutation", |b| {
        b.iter(|| exponentiality_status(black_box(&e2), 200, 0).unwrap())
    });
    group.finish();
}

fn numeric(c: &mut Criterion) {
    let (six, ell_bs) = fixture_input("paper-6dim", "ell_BS");
    let mut group = c.benchmark_group("orbit_sample");
    group.sample_size(20);
    for n_points in [50, 200] {
        let params = SampleParams {
            n_points,
            ..SampleParams::default()
        };
        group.bench_function(format!("paper-6dim, {n_points} points"), |b| {
            b.iter(|| orbit_sample(black_box(&six), black_box(&ell_bs), params).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, exact, spectrum, numeric);
criterion_main!(benches);
