//! MST-based node clustering: the DBMSTClu greedy cutter and its validity
//! indices.
//!
//! A partition of a tree is described by the set of cut tree edges. Each
//! remaining component is a cluster; its separation is the lightest cut edge
//! touching it and its dispersion the heaviest edge inside it.

mod ari;
mod greedy;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, TreeTopology};

pub use ari::adjusted_rand_index;
pub use greedy::{dbmstclu, dbmstclu_with, AcceptedCut, DbmstcluConfig, DbmstcluRun};

/// Floor applied to non-positive released weights before normalization.
pub const WEIGHT_FLOOR: f64 = 1e-9;

/// A spanning tree with weights in `(0, 1]`.
///
/// The tree is stored as a [`Graph`] over the same nodes whose edges are the
/// tree edges. Local edge `i` corresponds to parent edge `source_edges[i]`.
#[derive(Debug, Clone)]
pub struct WeightedTree {
    tree: Graph,
    source_edges: Vec<usize>,
}

impl WeightedTree {
    /// Takes weights that already lie in `(0, 1]`.
    pub fn new(node_count: usize, edges: Vec<(usize, usize)>, weights: Vec<f64>) -> Result<Self> {
        if let Some(index) = weights.iter().position(|w| !(*w > 0.0 && *w <= 1.0)) {
            return Err(Error::InvalidWeight {
                index,
                weight: weights[index],
                reason: "tree weights must lie in (0, 1]",
            });
        }
        if edges.len() + 1 != node_count {
            return Err(Error::NotSpanning { reason: format!("{} edges for {} nodes", edges.len(), node_count) });
        }
        let source_edges = (0..edges.len()).collect();
        let tree = Graph::new(node_count, edges, weights)?;
        Ok(Self { tree, source_edges })
    }

    /// Clamps weights to [`WEIGHT_FLOOR`] and divides by the largest one.
    pub fn normalized(node_count: usize, edges: Vec<(usize, usize)>, weights: &[f64]) -> Result<Self> {
        Self::new(node_count, edges, normalize(weights)?)
    }

    /// Tree edges of `graph`, weighted by `weights` (aligned with
    /// `tree.edges()`), then normalized.
    pub fn from_release(graph: &Graph, tree: &TreeTopology, weights: &[f64]) -> Result<Self> {
        if weights.len() != tree.len() {
            return Err(invalid("weights", format!("{} weights for {} tree edges", weights.len(), tree.len())));
        }
        let edges = tree.edges().iter().map(|&e| graph.edge(e)).collect();
        let mut out = Self::normalized(graph.node_count(), edges, weights)?;
        out.source_edges = tree.edges().to_vec();
        Ok(out)
    }

    /// Tree edges of `graph` with their weights in `graph`, normalized.
    pub fn from_graph(graph: &Graph, tree: &TreeTopology) -> Result<Self> {
        let weights: Vec<f64> = tree.edges().iter().map(|&e| graph.weight(e)).collect();
        Self::from_release(graph, tree, &weights)
    }

    pub fn node_count(&self) -> usize {
        self.tree.node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.tree.edge_count()
    }

    pub fn edge(&self, index: usize) -> (usize, usize) {
        self.tree.edge(index)
    }

    pub fn weight(&self, index: usize) -> f64 {
        self.tree.weight(index)
    }

    pub fn weights(&self) -> &[f64] {
        self.tree.weights()
    }

    pub fn neighbors(&self, node: usize) -> &[(usize, usize)] {
        self.tree.neighbors(node)
    }

    /// Parent-graph index of local edge `index`.
    pub fn source_edge(&self, index: usize) -> usize {
        self.source_edges[index]
    }
}

fn normalize(weights: &[f64]) -> Result<Vec<f64>> {
    if let Some(index) = weights.iter().position(|w| !w.is_finite()) {
        return Err(Error::InvalidWeight { index, weight: weights[index], reason: "weights must be finite" });
    }
    let clamped: Vec<f64> = weights.iter().map(|w| w.max(WEIGHT_FLOOR)).collect();
    let max = clamped.iter().copied().fold(0.0, f64::max);
    Ok(clamped.into_iter().map(|w| (w / max).min(1.0)).collect())
}

/// A partition of the tree's nodes into connected subtrees.
///
/// Clusters are kept in canonical order, sorted by their smallest node, and
/// every sum over clusters runs in that order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterPartition {
    clusters: Vec<Vec<usize>>,
    subtree_edges: Vec<Vec<usize>>,
    cut_edges: Vec<usize>,
    labels: Vec<usize>,
    dbcvi: f64,
}

impl ClusterPartition {
    /// All nodes in one cluster.
    pub fn single(tree: &WeightedTree) -> Self {
        let mut p = Self {
            clusters: vec![(0..tree.node_count()).collect()],
            subtree_edges: vec![(0..tree.edge_count()).collect()],
            cut_edges: Vec::new(),
            labels: vec![0; tree.node_count()],
            dbcvi: 0.0,
        };
        p.dbcvi = dbcvi(&p, tree);
        p
    }

    /// Partition obtained by cutting `cuts`, in order, starting from one
    /// cluster.
    pub fn from_cuts(tree: &WeightedTree, cuts: &[usize]) -> Result<Self> {
        let mut p = Self::single(tree);
        for &e in cuts {
            p = perform_cut(&p, e, tree)?;
        }
        Ok(p)
    }

    /// Node sets, sorted ascending, in canonical order.
    pub fn clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    /// Local tree-edge indices inside each cluster.
    pub fn subtree_edges(&self) -> &[Vec<usize>] {
        &self.subtree_edges
    }

    /// Cut tree edges in the order they were cut.
    pub fn cut_edges(&self) -> &[usize] {
        &self.cut_edges
    }

    /// Cluster position of every node.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn dbcvi(&self) -> f64 {
        self.dbcvi
    }

    pub fn cluster_count(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_cut(&self, edge: usize) -> bool {
        self.cut_edges.contains(&edge)
    }
}

/// Lightest cut edge incident to cluster `cluster`; 1 when there is a single
/// cluster.
pub fn separation(cluster: usize, partition: &ClusterPartition, tree: &WeightedTree) -> f64 {
    if partition.cluster_count() == 1 {
        return 1.0;
    }
    partition
        .cut_edges
        .iter()
        .filter(|&&e| {
            let (u, v) = tree.edge(e);
            partition.labels[u] == cluster || partition.labels[v] == cluster
        })
        .map(|&e| tree.weight(e))
        .fold(f64::INFINITY, f64::min)
}

/// Heaviest edge inside cluster `cluster`; 0 for a singleton.
pub fn dispersion(cluster: usize, partition: &ClusterPartition, tree: &WeightedTree) -> f64 {
    partition.subtree_edges[cluster].iter().map(|&e| tree.weight(e)).fold(0.0, f64::max)
}

/// `(sep - disp) / max(sep, disp)`, and 0 when both vanish.
pub fn validity_index(sep: f64, disp: f64) -> f64 {
    let denom = sep.max(disp);
    if denom == 0.0 {
        0.0
    } else {
        (sep - disp) / denom
    }
}

/// `|C| * V_C`. Summing these and dividing by `N` once keeps the index inside
/// [-1, 1] under rounding, since each term is bounded by `|C|` in magnitude.
pub(crate) fn cluster_term(size: usize, validity: f64) -> f64 {
    size as f64 * validity
}

/// Size-weighted mean of the per-cluster validity indices.
pub fn dbcvi(partition: &ClusterPartition, tree: &WeightedTree) -> f64 {
    let total: f64 = (0..partition.cluster_count())
        .map(|c| {
            let v = validity_index(separation(c, partition, tree), dispersion(c, partition, tree));
            cluster_term(partition.clusters[c].len(), v)
        })
        .sum();
    total / tree.node_count() as f64
}

/// Nodes reachable from `from` inside `cluster_edges` without crossing
/// `removed`. `mark` must be all false on entry and is restored on exit.
pub(crate) fn side_of(
    tree: &WeightedTree,
    from: usize,
    removed: usize,
    in_cluster_edge: &[bool],
    mark: &mut [bool],
) -> Vec<usize> {
    let mut side = vec![from];
    mark[from] = true;
    let mut head = 0;
    while head < side.len() {
        let x = side[head];
        head += 1;
        for &(y, e) in tree.neighbors(x) {
            if e != removed && in_cluster_edge[e] && !mark[y] {
                mark[y] = true;
                side.push(y);
            }
        }
    }
    for &x in &side {
        mark[x] = false;
    }
    side
}

/// Cuts tree edge `edge`, splitting the cluster that contains it in two.
pub fn perform_cut(partition: &ClusterPartition, edge: usize, tree: &WeightedTree) -> Result<ClusterPartition> {
    if edge >= tree.edge_count() {
        return Err(Error::EdgeOutOfRange { index: edge, edge_count: tree.edge_count() });
    }
    if partition.is_cut(edge) {
        return Err(Error::AlreadyCut { index: edge });
    }
    let (u, v) = tree.edge(edge);
    let c = partition.labels[u];
    debug_assert_eq!(c, partition.labels[v]);

    let mut in_cluster_edge = vec![false; tree.edge_count()];
    for &e in &partition.subtree_edges[c] {
        in_cluster_edge[e] = true;
    }
    let mut mark = vec![false; tree.node_count()];
    let mut a = side_of(tree, u, edge, &in_cluster_edge, &mut mark);
    a.sort_unstable();
    for &x in &a {
        mark[x] = true;
    }
    let b: Vec<usize> = partition.clusters[c].iter().copied().filter(|&x| !mark[x]).collect();
    let (edges_a, edges_b): (Vec<usize>, Vec<usize>) =
        partition.subtree_edges[c].iter().copied().filter(|&e| e != edge).partition(|&e| mark[tree.edge(e).0]);

    let mut parts: Vec<(Vec<usize>, Vec<usize>)> = partition
        .clusters
        .iter()
        .zip(&partition.subtree_edges)
        .enumerate()
        .filter(|&(i, _)| i != c)
        .map(|(_, (nodes, edges))| (nodes.clone(), edges.clone()))
        .collect();
    parts.push((a, edges_a));
    parts.push((b, edges_b));
    parts.sort_by_key(|(nodes, _)| nodes[0]);

    let mut labels = vec![0; tree.node_count()];
    for (i, (nodes, _)) in parts.iter().enumerate() {
        for &x in nodes {
            labels[x] = i;
        }
    }
    let (clusters, subtree_edges) = parts.into_iter().unzip();
    let mut cut_edges = partition.cut_edges.clone();
    cut_edges.push(edge);
    let mut out = ClusterPartition { clusters, subtree_edges, cut_edges, labels, dbcvi: 0.0 };
    out.dbcvi = dbcvi(&out, tree);
    Ok(out)
}
