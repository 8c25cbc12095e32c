use criterion::{criterion_group, criterion_main, Criterion};
use hecke_core::heckealg::{standard_tableaux, IdempotentBuilder, Partition};
use hecke_core::hpseries::hp_series;
use hecke_core::linalg::default_sample_points;
use hecke_core::poisson::{bracket_pl, bracket_r};
use hecke_core::rea::build_rea;
use hecke_core::swcat::ExtendedBraiding;
use hecke_core::HeckeSymmetry;
use num_rational::BigRational;
use num_traits::One;

fn certification(c: &mut Criterion) {
    c.bench_function("certify standard(3)", |b| b.iter(|| HeckeSymmetry::standard(3)));
    c.bench_function("certify superflip(2,1)", |b| b.iter(|| HeckeSymmetry::super_flip(2, 1)));
}

fn idempotents(c: &mut Criterion) {
    let h = HeckeSymmetry::standard(2);
    let t = standard_tableaux(&"2,1".parse::<Partition>().unwrap())[0].clone();
    c.bench_function("idempotent (2,1) standard(2)", |b| b.iter(|| IdempotentBuilder::new(&h).idempotent(&t).unwrap()));
}

fn series(c: &mut Criterion) {
    let h = HeckeSymmetry::standard(2);
    let pts = default_sample_points();
    let mut g = c.benchmark_group("hp");
    g.sample_size(10);
    g.bench_function("hp_series standard(2) K=6", |b| b.iter(|| hp_series(&h, 6, 6, &pts).unwrap()));
    g.finish();
}

fn category_and_rea(c: &mut Criterion) {
    let h = HeckeSymmetry::standard(2);
    c.bench_function("extended braiding standard(2)", |b| b.iter(|| ExtendedBraiding::new(&h)));
    c.bench_function("rea structure standard(2)", |b| b.iter(|| build_rea(&h).unwrap()));
}

fn poisson(c: &mut Criterion) {
    let one = BigRational::one();
    let mut g = c.benchmark_group("poisson");
    g.sample_size(10);
    g.bench_function("pencil jacobi m=3", |b| {
        b.iter(|| bracket_pl(3).combine(&one, &bracket_r(3), &one).jacobi_failure())
    });
    g.finish();
}

criterion_group!(benches, certification, idempotents, series, category_and_rea, poisson);
criterion_main!(benches);
