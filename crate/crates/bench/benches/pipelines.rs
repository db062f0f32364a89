use criterion::{criterion_group, criterion_main, Criterion};
use syzlab::artinian::{prym_green_kernel_dim, torsion_module_kernel_dim, DEFAULT_ARTINIAN_LIMIT};
use syzlab::curve::{canonical_multipliers, full_torsion_bundle, random_curve};
use syzlab::ff::{select_prime_and_root, DEFAULT_PRIME_RANGE};
use syzlab::koszul::{koszul_dim_ring, DEFAULT_DIRECT_LIMIT};

fn pipelines(c: &mut Criterion) {
    let mut group = c.benchmark_group("pipelines");
    group.sample_size(10);
    let field = select_prime_and_root(3, DEFAULT_PRIME_RANGE).unwrap();
    for g in [10usize, 12] {
        let curve = random_curve(g, field, 1).unwrap();
        let eta = full_torsion_bundle(&curve);
        group.bench_function(format!("prym_green/g{g}"), |b| {
            b.iter(|| prym_green_kernel_dim(&curve, &eta, 1, DEFAULT_ARTINIAN_LIMIT).unwrap())
        });
        group.bench_function(format!("torsion_module/g{g}"), |b| {
            b.iter(|| {
                torsion_module_kernel_dim(&curve, &eta, 1, 1, DEFAULT_ARTINIAN_LIMIT).unwrap()
            })
        });
    }
    let curve = random_curve(10, field, 1).unwrap();
    let l = canonical_multipliers(&curve).tensor(&full_torsion_bundle(&curve), curve.p());
    group.bench_function("direct_ring/g10", |b| {
        b.iter(|| koszul_dim_ring(&curve, &l, 3, 1, DEFAULT_DIRECT_LIMIT).unwrap())
    });
    group.finish();
}

criterion_group!(benches, pipelines);
criterion_main!(benches);
