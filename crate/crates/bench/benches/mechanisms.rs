use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use privmst::clustering::{dbmstclu, WeightedTree};
use privmst::dp::{exponential_choice, graph_laplace};
use privmst::graph::{erdos_renyi, mst_prim};
use privmst::pamst::{pamst, UtilityConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn mst_mechanisms(c: &mut Criterion) {
    let mut group = c.benchmark_group("mst");
    for n in [100, 300] {
        let g = erdos_renyi(n, 0.3, 0.0, 1.0, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        group.bench_with_input(BenchmarkId::new("pamst", n), &g, |b, g| {
            b.iter(|| pamst(g, 1.0, UtilityConfig::normalized(g), None, &mut rng).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("laplace_mst", n), &g, |b, g| {
            b.iter(|| mst_prim(&graph_laplace(g, 1.0, &mut rng).unwrap()))
        });
    }
    group.finish();
}

fn clustering(c: &mut Criterion) {
    let mut group = c.benchmark_group("dbmstclu");
    for n in [100, 1000] {
        let g = erdos_renyi(n, 0.1, 0.0, 1.0, 2).unwrap();
        let tree = WeightedTree::from_graph(&g, &mst_prim(&g)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &tree, |b, t| b.iter(|| dbmstclu(t)));
    }
    group.finish();
}

fn exponential(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let utilities: Vec<f64> = (0..10_000).map(|_| -rng.random::<f64>()).collect();
    c.bench_function("exponential_choice/10000", |b| {
        b.iter(|| exponential_choice(&utilities, 1.0, 1.0, &mut rng).unwrap())
    });
}

criterion_group!(benches, mst_mechanisms, clustering, exponential);
criterion_main!(benches);
