use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use super::{Graph, TreeTopology, UnionFind};
use crate::error::{Error, Result};

/// Heap key ordering edges by `(weight, edge index)`. The index makes the
/// order total, so Prim and Kruskal return the same tree.
#[derive(Debug, Clone, Copy)]
struct EdgeKey {
    weight: f64,
    edge: usize,
    to: usize,
}

impl PartialEq for EdgeKey {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for EdgeKey {}

impl PartialOrd for EdgeKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EdgeKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight.total_cmp(&other.weight).then(self.edge.cmp(&other.edge))
    }
}

/// Prim's algorithm from node 0 with a lazy binary heap.
pub fn mst_prim(graph: &Graph) -> TreeTopology {
    let n = graph.node_count();
    let mut in_tree = vec![false; n];
    let mut chosen = Vec::with_capacity(n.saturating_sub(1));
    let mut heap = BinaryHeap::new();
    let visit = |v: usize, in_tree: &mut [bool], heap: &mut BinaryHeap<Reverse<EdgeKey>>| {
        in_tree[v] = true;
        for &(to, edge) in graph.neighbors(v) {
            if !in_tree[to] {
                heap.push(Reverse(EdgeKey { weight: graph.weight(edge), edge, to }));
            }
        }
    };
    visit(0, &mut in_tree, &mut heap);
    while let Some(Reverse(key)) = heap.pop() {
        if in_tree[key.to] {
            continue;
        }
        chosen.push(key.edge);
        if chosen.len() + 1 == n {
            break;
        }
        visit(key.to, &mut in_tree, &mut heap);
    }
    TreeTopology::new(graph, chosen).expect("prim on a connected graph yields a spanning tree")
}

/// Kruskal's algorithm over edges sorted by `(weight, edge index)`.
pub fn mst_kruskal(graph: &Graph) -> TreeTopology {
    let n = graph.node_count();
    let mut order: Vec<usize> = (0..graph.edge_count()).collect();
    order.sort_unstable_by(|&a, &b| graph.weight(a).total_cmp(&graph.weight(b)).then(a.cmp(&b)));
    let mut uf = UnionFind::new(n);
    let mut chosen = Vec::with_capacity(n.saturating_sub(1));
    for e in order {
        let (u, v) = graph.edge(e);
        if uf.union(u, v) {
            chosen.push(e);
            if chosen.len() + 1 == n {
                break;
            }
        }
    }
    TreeTopology::new(graph, chosen).expect("kruskal on a connected graph yields a spanning tree")
}

/// Sum of `graph`'s weights over the tree's edges.
pub fn tree_weight(tree: &TreeTopology, graph: &Graph) -> Result<f64> {
    tree.edges()
        .iter()
        .map(|&e| {
            if e < graph.edge_count() {
                Ok(graph.weight(e))
            } else {
                Err(Error::EdgeOutOfRange { index: e, edge_count: graph.edge_count() })
            }
        })
        .sum()
}

/// Total weight of a minimum spanning tree of `graph`.
pub fn mst_weight(graph: &Graph) -> f64 {
    tree_weight(&mst_prim(graph), graph).expect("tree built on this graph")
}

/// Weight of `tree` under the true weights minus the MST weight. Never negative
/// beyond floating-point rounding.
pub fn approximation_error(graph: &Graph, tree: &TreeTopology) -> Result<f64> {
    TreeTopology::new(graph, tree.edges().to_vec())?;
    Ok(tree_weight(tree, graph)? - mst_weight(graph))
}
