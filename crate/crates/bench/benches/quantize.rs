use criterion::{black_box, criterion_group, criterion_main, Criterion};
use oddquant_core::checks::{gen, run_suite, Suite};
use oddquant_core::{quantize_even_isolated, quantize_odd3_rational, Convention, VirtualCharacter};
use rand::SeedableRng;

fn arithmetic(c: &mut Criterion) {
    let a: VirtualCharacter = "-3*z^(-1/2) + 2 + z^2 - 7*z^9 + z^(31/2)".parse().unwrap();
    let den = VirtualCharacter::weyl_binomial(3);
    let prod = &a * &den;
    c.bench_function("product", |b| b.iter(|| black_box(&a) * black_box(&den)));
    c.bench_function("exact_quotient", |b| b.iter(|| black_box(&prod).exact_quotient(&den).unwrap()));
}

fn formulas(c: &mut Criterion) {
    let sphere = gen::sphere([5, 15, -15]);
    c.bench_function("even sphere(5,15,-15)", |b| b.iter(|| quantize_even_isolated(black_box(&sphere)).unwrap()));

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
    let m = gen::odd_manifold(&mut rng, "F");
    c.bench_function("odd3 euler rational", |b| {
        b.iter(|| quantize_odd3_rational(black_box(&m), Convention::EULER))
    });
}

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    for suite in [Suite::ConSum, Suite::Additivity] {
        group.bench_function(suite.name(), |b| b.iter(|| run_suite(suite, 7, 20)));
    }
    group.finish();
}

criterion_group!(benches, arithmetic, formulas, suites);
criterion_main!(benches);
