use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use irrot_core::averaging::{average_toward_p, plan_for_element};
use irrot_core::banach_module::{cyclic_solver, ModuleVector};
use irrot_core::sample::Sampler;
use irrot_core::spectra::{eig_selfadjoint, nonspectrality_witness, represent};
use irrot_core::{AlgebraElement, AlgebraParams, Complex64, TorusFunction};

fn sampler(seed: u64) -> Sampler {
    Sampler::new(seed, AlgebraParams::default())
}

fn multiply(c: &mut Criterion) {
    let mut group = c.benchmark_group("multiply");
    for width in [1usize, 3, 5] {
        let mut s = sampler(1);
        let (f, g) = (s.element(width, 4), s.element(width, 4));
        group.bench_with_input(BenchmarkId::from_parameter(width), &width, |b, _| {
            b.iter(|| black_box(&f).multiply(black_box(&g)).unwrap())
        });
    }
    group.finish();
}

fn sup_norm(c: &mut Criterion) {
    let mut group = c.benchmark_group("sup_norm");
    for degree in [4usize, 32, 256] {
        let phi = sampler(2).torus_function(degree);
        group.bench_with_input(BenchmarkId::from_parameter(degree), &degree, |b, _| {
            b.iter(|| black_box(&phi).sup_norm())
        });
    }
    group.finish();
}

fn sections(c: &mut Criterion) {
    let p = AlgebraParams::default();
    let am = AlgebraElement::from_terms(
        &p,
        [
            (-1, TorusFunction::one()),
            (0, TorusFunction::cosine(1).scale(2.0)),
            (1, TorusFunction::one()),
        ],
    );
    let mut group = c.benchmark_group("finite_section");
    for l in [16usize, 64] {
        group.bench_with_input(BenchmarkId::new("represent", l), &l, |b, &l| {
            b.iter(|| represent(black_box(&am), l, 0.0).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("eig_selfadjoint", l), &l, |b, &l| {
            b.iter(|| eig_selfadjoint(black_box(&am), l, 0.0).unwrap())
        });
    }
    group.finish();
    c.bench_function("witness_lambda_2", |b| {
        b.iter(|| nonspectrality_witness(&p, Complex64::new(2.0, 0.0), 30, 64).unwrap())
    });
}

fn averaging(c: &mut Criterion) {
    let f = sampler(4).element(5, 4);
    let mut group = c.benchmark_group("averaging");
    for epsilon in [1e-2, 1e-3] {
        group.bench_with_input(BenchmarkId::from_parameter(epsilon), &epsilon, |b, &eps| {
            b.iter(|| {
                let plan = plan_for_element(black_box(&f), eps).unwrap();
                average_toward_p(&f, &plan)
            })
        });
    }
    group.finish();
}

fn cyclic(c: &mut Criterion) {
    let p = AlgebraParams::default();
    let phi = ModuleVector::new(&TorusFunction::sine(1) + &TorusFunction::constant(0.1));
    c.bench_function("cyclic_solver", |b| {
        b.iter(|| cyclic_solver(&p, black_box(&phi), 1e-6).unwrap())
    });
}

criterion_group!(benches, multiply, sup_norm, sections, averaging, cyclic);
criterion_main!(benches);
