use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use lao_core::{
    build_compound, build_matrix, exact_error, min_div_in_ball, min_div_in_complement,
    BallConstraint, DecisionRegions, Distribution, GivenExponents, HypothesisSet, LogBase,
    MultiObjectSpec,
};

const B: LogBase = LogBase::BITS;

fn example_set() -> HypothesisSet {
    HypothesisSet::new(
        vec![
            Distribution::new(vec![0.10, 0.90]).unwrap(),
            Distribution::new(vec![0.85, 0.15]).unwrap(),
            Distribution::new(vec![0.23, 0.77]).unwrap(),
        ],
        B,
    )
    .unwrap()
}

fn bench_ball_projection(c: &mut Criterion) {
    let target = Distribution::new(vec![0.85, 0.15]).unwrap();
    let center = Distribution::new(vec![0.10, 0.90]).unwrap();
    let ball = BallConstraint::new(center, 0.05).unwrap();
    c.bench_function("min_div_in_ball binary", |b| {
        b.iter(|| min_div_in_ball(black_box(&target), black_box(&ball), B).unwrap())
    });

    let target3 = Distribution::new(vec![0.5, 0.3, 0.2]).unwrap();
    let center3 = Distribution::new(vec![0.2, 0.3, 0.5]).unwrap();
    let ball3 = BallConstraint::new(center3, 0.1).unwrap();
    c.bench_function("min_div_in_ball ternary", |b| {
        b.iter(|| min_div_in_ball(black_box(&target3), black_box(&ball3), B).unwrap())
    });
}

fn bench_complement(c: &mut Criterion) {
    let h = example_set();
    let balls = vec![
        BallConstraint::new(h.dist(0).clone(), 0.05).unwrap(),
        BallConstraint::new(h.dist(1).clone(), 0.05).unwrap(),
    ];
    c.bench_function("min_div_in_complement binary M=3", |b| {
        b.iter(|| min_div_in_complement(black_box(h.dist(0)), black_box(&balls), B).unwrap())
    });
}

fn bench_matrix_and_tensor(c: &mut Criterion) {
    let h = example_set();
    let given = GivenExponents::new(vec![0.05, 0.05]).unwrap();
    c.bench_function("build_matrix M=3", |b| {
        b.iter(|| build_matrix(black_box(&h), black_box(&given)).unwrap())
    });

    let spec = MultiObjectSpec::new(
        h.clone(),
        vec![given.clone(), given.clone(), given.clone()],
    )
    .unwrap();
    let tensor = build_compound(&spec).unwrap();
    c.bench_function("tensor entry K=3", |b| {
        b.iter_batched(
            || (vec![1usize, 0, 2], vec![0usize, 1, 2]),
            |(t, a)| tensor.entry(black_box(&t), black_box(&a)).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

fn bench_exact_error(c: &mut Criterion) {
    let h = HypothesisSet::new(
        vec![
            Distribution::new(vec![0.10, 0.90]).unwrap(),
            Distribution::new(vec![0.85, 0.15]).unwrap(),
        ],
        B,
    )
    .unwrap();
    let regions = DecisionRegions::new(&h, &GivenExponents::new(vec![0.05]).unwrap()).unwrap();
    c.bench_function("exact_error binary N=1000", |b| {
        b.iter(|| exact_error(black_box(&h), black_box(&regions), 1, 0, 1000).unwrap())
    });
}

criterion_group!(
    benches,
    bench_ball_projection,
    bench_complement,
    bench_matrix_and_tensor,
    bench_exact_error
);
criterion_main!(benches);
