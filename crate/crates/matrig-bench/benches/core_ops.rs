//! Benchmarks for the hot paths: exact rank over big fields, Tutte
//! computation, photo enumeration and randomized complex construction.

use criterion::{criterion_group, criterion_main, Criterion};

use matrig::gf::FiniteField;
use matrig::matroid;
use matrig::photospace::photo_count_brute;
use matrig::rigidity::{generic_complex, MatroidKind};
use matrig::suite;
use matrig::tutte::{tutte_corank_nullity, tutte_recursive};

fn bench_field_mul(c: &mut Criterion) {
    let mut group = c.benchmark_group("field_mul");
    for field in [
        FiniteField::new(suite::BIG_PRIME, 1).unwrap(),
        FiniteField::new(2, 60).unwrap(),
        FiniteField::new(10007, 5).unwrap(),
    ] {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let a = field.random_nonzero(&mut rng);
        let b = field.random_nonzero(&mut rng);
        group.bench_function(format!("{field:?}"), |bench| {
            bench.iter(|| std::hint::black_box(field.mul(&a, &b)))
        });
    }
    group.finish();
}

fn bench_tutte(c: &mut Criterion) {
    let (grid, _) = matroid::grid_examples(&FiniteField::new(10007, 1).unwrap()).unwrap();
    c.bench_function("tutte_corank_nullity_grid9", |b| {
        b.iter(|| tutte_corank_nullity(&grid).unwrap())
    });
    c.bench_function("tutte_recursive_grid9", |b| {
        b.iter(|| tutte_recursive(&grid).unwrap())
    });
}

fn bench_photo_census(c: &mut Criterion) {
    let f3 = FiniteField::new(3, 1).unwrap();
    let k3 = matroid::graphic(3, &[(0, 1), (1, 2), (2, 0)], &f3).unwrap();
    c.bench_function("photo_brute_k3_q3_d3", |b| {
        b.iter(|| photo_count_brute(&k3, 1, 3).unwrap())
    });
}

fn bench_generic_complex(c: &mut Criterion) {
    let fano = matroid::fano();
    c.bench_function("rigidity_complex_fano_d3_gf2_60", |b| {
        b.iter(|| generic_complex(&fano, 3, MatroidKind::Rigidity, 2, 5).unwrap())
    });
    let (grid, _) = matroid::grid_examples(&FiniteField::new(10007, 1).unwrap()).unwrap();
    c.bench_function("rigidity_complex_grid9_d3_gf10007_5", |b| {
        b.iter(|| generic_complex(&grid, 3, MatroidKind::Rigidity, 2, 5).unwrap())
    });
}

criterion_group!(
    benches,
    bench_field_mul,
    bench_tutte,
    bench_photo_census,
    bench_generic_complex
);
criterion_main!(benches);
