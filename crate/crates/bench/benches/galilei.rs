use criterion::{black_box, criterion_group, criterion_main, Criterion};
use galilei_core::classifier::{length4_search, search_length3, solve_length3, Length3Candidate};
use galilei_core::sixj;
use galilei_core::{AlgebraSpec, SixJArgs};

fn sixj_eval(c: &mut Criterion) {
    let small: SixJArgs = "{2 3/2 3/2; 3/2 2 3/2}".parse().unwrap();
    let large: SixJArgs = "{6 5/2 13/2; 3 9/2 3/2}".parse().unwrap();
    c.bench_function("sixj/eval small", |b| b.iter(|| sixj::eval(black_box(&small))));
    c.bench_function("sixj/eval large", |b| b.iter(|| sixj::eval(black_box(&large))));
}

fn length3(c: &mut Criterion) {
    let spec = AlgebraSpec::from_m(3).unwrap();
    let cand = Length3Candidate::new(spec, 4, 3, 4);
    c.bench_function("classifier/solve V(4),V(3),V(4)", |b| b.iter(|| solve_length3(black_box(&cand))));
    let mut group = c.benchmark_group("classifier/search");
    group.sample_size(10);
    group.bench_function("length 3, m = 3, bound 12", |b| b.iter(|| search_length3(spec, 12)));
    group.bench_function("length 4, m = 1, bound 8", |b| {
        b.iter(|| length4_search(AlgebraSpec::from_m(1).unwrap(), 8))
    });
    group.finish();
}

criterion_group!(benches, sixj_eval, length3);
criterion_main!(benches);
