use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use factorsys::random::{random_algebra, random_factor_system, random_matrix};
use factorsys::{central_h2, extract_factor_system, find_split_witness, FieldSpec, Variety, DEFAULT_BUDGET};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rref(c: &mut Criterion) {
    let mut group = c.benchmark_group("rref");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in [8, 16, 32] {
        let fp = random_matrix(FieldSpec::prime(7).unwrap(), n, n, &mut rng);
        let q = random_matrix(FieldSpec::rationals(), n, n, &mut rng);
        group.bench_with_input(BenchmarkId::new("gf7", n), &fp, |b, m| b.iter(|| black_box(m.rref())));
        group.bench_with_input(BenchmarkId::new("q", n), &q, |b, m| b.iter(|| black_box(m.rref())));
    }
    group.finish();
}

fn verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_factor_system");
    let f5 = FieldSpec::prime(5).unwrap();
    for v in [Variety::Leibniz, Variety::Dendriform, Variety::Diassociative] {
        let fs = random_factor_system(v, f5, 3, 3, 7);
        group.bench_function(v.name(), |b| b.iter(|| black_box(fs.verify())));
    }
    group.finish();
}

fn round_trip(c: &mut Criterion) {
    let fs = random_factor_system(Variety::Diassociative, FieldSpec::prime(5).unwrap(), 3, 3, 11);
    c.bench_function("construct_extract/diassociative", |b| {
        b.iter(|| {
            let (ext, t) = fs.construct_extension().unwrap();
            black_box(extract_factor_system(&ext, &t).unwrap())
        })
    });
}

fn cohomology(c: &mut Criterion) {
    let mut group = c.benchmark_group("central_h2");
    let f7 = FieldSpec::prime(7).unwrap();
    for v in [Variety::Lie, Variety::Leibniz, Variety::Dendriform] {
        let b = random_algebra(v, f7, 4, 3);
        group.bench_function(v.name(), |bench| bench.iter(|| black_box(central_h2(1, &b))));
    }
    group.finish();
}

fn split_search(c: &mut Criterion) {
    let f3 = FieldSpec::prime(3).unwrap();
    let fs = random_factor_system(Variety::Leibniz, f3, 2, 2, 5);
    c.bench_function("find_split_witness/leibniz_gf3", |b| {
        b.iter(|| black_box(find_split_witness(&fs, DEFAULT_BUDGET).unwrap()))
    });
}

criterion_group!(benches, rref, verify, round_trip, cohomology, split_search);
criterion_main!(benches);
