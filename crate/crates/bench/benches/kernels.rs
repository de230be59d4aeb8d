use criterion::{black_box, criterion_group, criterion_main, Criterion};
use symbell::fwsolver::visibility_search;
use symbell::localbound::{exact_local_bound, int_functional};
use symbell::necklaces::enumerate_necklaces;
use symbell::{BoundOptions, ConvolutionState, FWConfig, ScenarioParams, Strategy};

fn local_bound(c: &mut Criterion) {
    let f = int_functional(ScenarioParams::new(5, 10).unwrap(), &[988, 0, 575, 0, -575]).unwrap();
    let opts = BoundOptions::default();
    c.bench_function("exact_local_bound N=5 m=10", |b| {
        b.iter(|| exact_local_bound(black_box(&f), &opts).unwrap())
    });
}

fn convolution(c: &mut Criterion) {
    let s = Strategy::new(vec![1, 1, -1, 1, -1, -1, 1, -1, 1, 1, -1, -1]).unwrap();
    c.bench_function("convolve 6 parties m=12", |b| {
        b.iter(|| {
            let mut state = ConvolutionState::neutral(12);
            for _ in 0..6 {
                state = state.convolve_party(black_box(&s)).unwrap();
            }
            state
        })
    });
}

fn necklaces(c: &mut Criterion) {
    c.bench_function("enumerate_necklaces m=16", |b| {
        b.iter(|| enumerate_necklaces(black_box(16)).unwrap())
    });
}

fn visibility(c: &mut Criterion) {
    let mut group = c.benchmark_group("visibility_search");
    group.sample_size(10);
    for (n, m) in [(3, 3), (4, 5), (3, 9)] {
        let params = ScenarioParams::new(n, m).unwrap();
        let config = FWConfig::default();
        group.bench_function(format!("N={n} m={m}"), |b| {
            b.iter(|| visibility_search(black_box(&params), &config).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, local_bound, convolution, necklaces, visibility);
criterion_main!(benches);
