use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, PointCloud, UnionFind};
use crate::error::{invalid, Error, Result};

/// Resampling cap for [`erdos_renyi`].
pub const ER_MAX_ATTEMPTS: usize = 10_000;

/// Samples a connected Erdős–Rényi graph G(n, p).
///
/// Pairs `(i, j)`, `i < j`, are visited in lexicographic order and kept with
/// probability `p`; kept edges get a weight drawn uniformly from
/// `[w_low, w_high)`. Disconnected draws are discarded and the whole graph is
/// resampled, up to [`ER_MAX_ATTEMPTS`] times.
pub fn erdos_renyi(n: usize, p: f64, w_low: f64, w_high: f64, seed: u64) -> Result<Graph> {
    if n < 2 {
        return Err(invalid("n", "need at least two nodes"));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(invalid("p", format!("{p} is outside (0, 1]")));
    }
    if !(w_low.is_finite() && w_high.is_finite() && w_low < w_high) {
        return Err(invalid("w_low/w_high", format!("need w_low < w_high, got [{w_low}, {w_high})")));
    }
    if w_low < 0.0 {
        return Err(invalid("w_low", "weights must be non-negative"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = w_high - w_low;
    let mut edges = Vec::new();
    let mut weights = Vec::new();
    for _ in 0..ER_MAX_ATTEMPTS {
        edges.clear();
        weights.clear();
        let mut uf = UnionFind::new(n);
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.random::<f64>() < p {
                    edges.push((i, j));
                    weights.push(w_low + span * rng.random::<f64>());
                    uf.union(i, j);
                }
            }
        }
        if uf.component_count() == 1 {
            return Graph::new(n, edges, weights);
        }
    }
    Err(Error::RetryBudgetExhausted {
        n,
        p,
        attempts: ER_MAX_ATTEMPTS,
        expected_degree: p * (n - 1) as f64,
        required: (n as f64).ln(),
    })
}

/// Threshold graph on a point cloud: `i -- j` iff their Euclidean distance is
/// at most `radius`, weighted by that distance.
///
/// A disconnected result is an error carrying the smallest radius that would
/// connect the cloud (the bottleneck edge of the complete-graph MST).
pub fn epsilon_graph(cloud: &PointCloud, radius: f64) -> Result<Graph> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(invalid("radius", format!("{radius} must be positive and finite")));
    }
    let n = cloud.len();
    let mut edges = Vec::new();
    let mut weights = Vec::new();
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let d = cloud.distance(i, j);
            if d <= radius {
                edges.push((i, j));
                weights.push(d);
                uf.union(i, j);
            }
        }
    }
    if uf.component_count() != 1 {
        return Err(Error::RadiusTooSmall { radius, suggested: connecting_radius(cloud) });
    }
    Graph::new(n, edges, weights)
}

/// Largest edge of the Euclidean MST of the cloud (dense O(n²) Prim).
pub fn connecting_radius(cloud: &PointCloud) -> f64 {
    let n = cloud.len();
    let mut in_tree = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    let mut bottleneck: f64 = 0.0;
    best[0] = 0.0;
    for _ in 0..n {
        let (v, d) = (0..n)
            .filter(|&v| !in_tree[v])
            .map(|v| (v, best[v]))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("a node remains");
        in_tree[v] = true;
        bottleneck = bottleneck.max(d);
        for u in 0..n {
            if !in_tree[u] {
                best[u] = best[u].min(cloud.distance(u, v));
            }
        }
    }
    bottleneck
}

/// Sketches binary records into a co-occurrence graph over the variables.
///
/// Node `i` is variable `i`; each pair in `edge_spec` becomes an edge whose
/// weight counts the records where both variables equal 1.
pub fn sketch_binary_dataset(vectors: &[Vec<u8>], edge_spec: &[(usize, usize)]) -> Result<Graph> {
    if edge_spec.is_empty() {
        return Err(Error::EmptyEdgeSpec);
    }
    let Some(first) = vectors.first() else {
        return Err(invalid("vectors", "no records"));
    };
    let m = first.len();
    for (k, z) in vectors.iter().enumerate() {
        if z.len() != m {
            return Err(invalid("vectors", format!("record {k} has length {}, expected {m}", z.len())));
        }
        if z.iter().any(|&b| b > 1) {
            return Err(invalid("vectors", format!("record {k} is not binary")));
        }
    }
    let weights = edge_spec
        .iter()
        .map(|&(i, j)| {
            if i >= m || j >= m {
                return Err(Error::NodeOutOfRange { node: i.max(j), node_count: m });
            }
            Ok(vectors.iter().filter(|z| z[i] == 1 && z[j] == 1).count() as f64)
        })
        .collect::<Result<Vec<_>>>()?;
    Graph::new(m, edge_spec.to_vec(), weights)
}
