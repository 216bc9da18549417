use std::hint::black_box;

use bidisk::asymptotics::monotonicity_certificate;
use bidisk::invariants::{sigma_closed, sigma_partial, PairingEngine};
use bidisk::toeplitz::{det_exact, det_sequence, fh_truncated_determinants, last_row_cofactors, FhParams};
use bidisk::{Generator, HomogeneousSymbol, Submodule};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn determinants(c: &mut Criterion) {
    let p = Submodule::Zw2.symbol();
    let mut group = c.benchmark_group("determinants");
    for n in [50usize, 100, 200] {
        group.bench_with_input(BenchmarkId::new("banded", n), &n, |b, &n| b.iter(|| det_sequence(black_box(&p), n)));
    }
    for n in [25usize, 50] {
        let m = p.gram_matrix(n).into_matrix();
        group.bench_with_input(BenchmarkId::new("bareiss", n), &m, |b, m| b.iter(|| det_exact(black_box(m))));
    }
    group.finish();
}

fn cofactors(c: &mut Criterion) {
    let zw2 = Submodule::Zw2.symbol();
    let generic: HomogeneousSymbol = "2,-1,3".parse().unwrap();
    let mut group = c.benchmark_group("cofactors");
    group.bench_function("ansatz/zw2/n=60", |b| b.iter(|| last_row_cofactors(black_box(&zw2), 60)));
    group.bench_function("solve/generic/n=60", |b| b.iter(|| last_row_cofactors(black_box(&generic), 60)));
    group.bench_function("engine/generic/n=40", |b| b.iter(|| PairingEngine::new(black_box(&generic), 40)));
    group.finish();
}

fn invariants(c: &mut Criterion) {
    let mut group = c.benchmark_group("invariants");
    group.bench_function("sigma_closed/zw2/k=500", |b| b.iter(|| sigma_closed(Submodule::Zw2, black_box(500))));
    group.bench_function("sigma_partial/zw2/k=10/N=1000", |b| {
        b.iter(|| sigma_partial(&Generator::Named(Submodule::Zw2), black_box(10), 1000))
    });
    group.sample_size(10);
    group.bench_function("certificate/zw2/k=200", |b| {
        b.iter(|| monotonicity_certificate(Submodule::Zw2, black_box(200)))
    });
    group.finish();
}

fn fisher_hartwig(c: &mut Criterion) {
    c.bench_function("fisher_hartwig/(3,1)/n=60", |b| {
        b.iter(|| fh_truncated_determinants(black_box(FhParams::new(3, 1)), 60))
    });
}

criterion_group!(benches, determinants, cofactors, invariants, fisher_hartwig);
criterion_main!(benches);
