use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use packsc::structures::{LinkCutForest, RowIntervalTree};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn link_cut(c: &mut Criterion) {
    let mut g = c.benchmark_group("link_cut_ops");
    for n in [1_000, 10_000, 100_000] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            let mut f = LinkCutForest::new(n);
            // a long path first, so roots are deep
            for v in 1..n {
                f.link(v, v - 1).unwrap();
            }
            b.iter(|| {
                let v = rng.gen_range(1..n);
                if rng.gen_bool(0.5) {
                    let p = f.parent(v);
                    let _ = f.cut(v);
                    if let Some(p) = p {
                        let _ = f.link(v, p);
                    }
                }
                f.find_root(v)
            })
        });
    }
    g.finish();
}

fn stabbing(c: &mut Criterion) {
    let mut g = c.benchmark_group("interval_stab");
    for n in [1_000, 100_000] {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let items: Vec<(f64, f64, usize)> = (0..n)
            .map(|i| {
                let a = rng.gen_range(0.0..n as f64);
                (a, a + rng.gen_range(0.0..8.0), i)
            })
            .collect();
        let tree = RowIntervalTree::new(items);
        g.bench_with_input(BenchmarkId::from_parameter(n), &tree, |b, t| {
            b.iter(|| t.stab(rng.gen_range(0.0..n as f64)))
        });
    }
    g.finish();
}

criterion_group!(benches, link_cut, stabbing);
criterion_main!(benches);
