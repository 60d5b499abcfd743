use alpha_limit::alpha::{alpha_profile, tau0, tau1_prime, tau2};
use alpha_limit::diagonalize::{diagonalize, spectral_radius};
use alpha_limit::shearer::{build_shearer, convergence_row};
use alpha_limit::tree::{a_alpha_weights, make_caterpillar};
use alpha_limit::CaterpillarSpec;
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn caterpillar(k: usize) -> alpha_limit::WeightedTreeMatrix {
    let counts: Vec<u32> = (0..k).map(|i| (i % 3) as u32).collect();
    let tree = make_caterpillar(&CaterpillarSpec::new(counts).unwrap());
    a_alpha_weights(&tree, 0.1).unwrap()
}

fn bench_diagonalize(c: &mut Criterion) {
    let mut g = c.benchmark_group("diagonalize");
    for k in [100, 1_000, 10_000] {
        let m = caterpillar(k);
        g.bench_with_input(BenchmarkId::from_parameter(k), &m, |b, m| {
            b.iter(|| diagonalize(m, black_box(-2.4)))
        });
    }
    g.finish();
}

fn bench_radius(c: &mut Criterion) {
    let mut g = c.benchmark_group("spectral_radius");
    for k in [100, 1_000] {
        let m = caterpillar(k);
        g.bench_with_input(BenchmarkId::from_parameter(k), &m, |b, m| {
            b.iter(|| spectral_radius(m, 1e-12).unwrap())
        });
    }
    g.finish();
}

fn bench_curves(c: &mut Criterion) {
    // distinct alphas each iteration so the memo cache does not short-circuit
    let mut i = 0u64;
    let mut next = move || {
        i += 1;
        0.4 * ((i * 2_654_435_761) % 1_000_003) as f64 / 1_000_003.0
    };
    c.bench_function("tau0", |b| b.iter(|| tau0(next()).unwrap()));
    c.bench_function("tau2", |b| b.iter(|| tau2(next()).unwrap()));
    c.bench_function("tau1_prime", |b| b.iter(|| tau1_prime(0.2 * next()).unwrap()));
    c.bench_function("alpha_profile", |b| b.iter(|| alpha_profile(next()).unwrap()));
}

fn bench_shearer(c: &mut Criterion) {
    c.bench_function("build_shearer k=100", |b| {
        b.iter(|| build_shearer(black_box(0.1), black_box(2.44), 100).unwrap())
    });
    c.bench_function("convergence_row k=100", |b| {
        b.iter(|| convergence_row(black_box(0.1), black_box(2.44), 100).unwrap())
    });
}

criterion_group!(benches, bench_diagonalize, bench_radius, bench_curves, bench_shearer);
criterion_main!(benches);
