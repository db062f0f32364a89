use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use syzlab::linalg::{naive_rref, rank, MatrixFp};
use syzlab::rng::splitmix;

const P: u32 = 10007;

fn dense_rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank");
    group.sample_size(10);
    for n in [128usize, 512, 1024] {
        let m = MatrixFp::random(n, n, P, &mut splitmix(n as u64));
        group.bench_with_input(BenchmarkId::new("dense", n), &m, |b, m| b.iter(|| rank(m)));
    }
    let m = MatrixFp::random(200, 200, P, &mut splitmix(7));
    group.bench_function("naive_rref/200", |b| b.iter(|| naive_rref(&m)));
    group.finish();
}

criterion_group!(benches, dense_rank);
criterion_main!(benches);
