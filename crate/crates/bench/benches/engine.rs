use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use qcharlab_bench::{resonant_pair, specs};
use qcharlab_core::{classify_normal, kr_qchar_by_partitions, q_factorize, qchar, LMonomial};

fn bench_qchar(c: &mut Criterion) {
    let mut g = c.benchmark_group("qchar");
    for (label, spec) in specs() {
        g.bench_with_input(BenchmarkId::from_parameter(label), &spec, |b, s| b.iter(|| qchar(black_box(s)).unwrap()));
    }
    g.finish();
    c.bench_function("kr_partitions_n4_k4", |b| b.iter(|| kr_qchar_by_partitions(4, black_box(0), 4).unwrap()));
}

fn bench_classify(c: &mut Criterion) {
    let mut g = c.benchmark_group("classify_normal");
    for n in 1..=3 {
        let (spec, kr) = resonant_pair(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &(spec, kr), |b, (s, k)| {
            b.iter(|| classify_normal(black_box(s), black_box(k)).unwrap())
        });
    }
    g.finish();
}

fn bench_factorize(c: &mut Criterion) {
    let m = LMonomial::parse(1, "Y[1,-4] Y[1,-2]^2 Y[1,0]^3 Y[1,2]^2 Y[1,6]").unwrap();
    c.bench_function("q_factorize", |b| b.iter(|| q_factorize(black_box(&m)).unwrap()));
}

criterion_group!(benches, bench_qchar, bench_classify, bench_factorize);
criterion_main!(benches);
