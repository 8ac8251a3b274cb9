//! Weighted undirected graphs, spanning-tree topologies and point clouds.
//!
//! A [`Graph`] splits into an immutable topology, shared behind an `Arc`, and a
//! weight vector indexed by edge. Edge identity is the construction index and
//! every tie-break in the crate (MST ordering, range ordering) uses it, so
//! sanitized copies of a graph keep the exact same edge numbering.

mod cut;
mod generators;
mod io;
mod mst;
mod union_find;

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use cut::{xor_incident_edges, CrossingEdge};
pub use generators::{connecting_radius, epsilon_graph, erdos_renyi, sketch_binary_dataset, ER_MAX_ATTEMPTS};
pub use io::{parse_graph, parse_point_cloud, write_graph, write_point_cloud};
pub use mst::{approximation_error, mst_kruskal, mst_prim, mst_weight, tree_weight};
pub use union_find::UnionFind;

#[derive(Debug, PartialEq, Eq)]
struct Topology {
    node_count: usize,
    edges: Vec<(usize, usize)>,
    /// `adjacency[v]` lists `(neighbor, edge index)` in ascending edge order.
    adjacency: Vec<Vec<(usize, usize)>>,
}

/// A simple, undirected, connected graph with one weight per edge.
#[derive(Debug, Clone)]
pub struct Graph {
    topology: Arc<Topology>,
    weights: Vec<f64>,
}

impl Graph {
    /// Builds a graph, checking simplicity, node ranges, finite weights and
    /// connectivity. Edge order is kept as given.
    pub fn new(node_count: usize, edges: Vec<(usize, usize)>, weights: Vec<f64>) -> Result<Self> {
        if node_count == 0 {
            return Err(crate::error::invalid("node_count", "graph needs at least one node"));
        }
        if edges.len() != weights.len() {
            return Err(crate::error::invalid(
                "weights",
                format!("{} weights for {} edges", weights.len(), edges.len()),
            ));
        }
        let mut seen = HashSet::with_capacity(edges.len());
        let mut adjacency = vec![Vec::new(); node_count];
        for (index, &(u, v)) in edges.iter().enumerate() {
            for node in [u, v] {
                if node >= node_count {
                    return Err(Error::NodeOutOfRange { node, node_count });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { index, u, v });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge { index, u, v });
            }
            adjacency[u].push((v, index));
            adjacency[v].push((u, index));
        }
        check_weights(&weights)?;
        let components = component_count(node_count, &edges);
        if components != 1 {
            return Err(Error::Disconnected { components });
        }
        Ok(Self { topology: Arc::new(Topology { node_count, edges, adjacency }), weights })
    }

    /// Same topology, new weights. The topology is shared, not copied.
    pub fn with_weights(&self, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != self.edge_count() {
            return Err(crate::error::invalid(
                "weights",
                format!("{} weights for {} edges", weights.len(), self.edge_count()),
            ));
        }
        check_weights(&weights)?;
        Ok(Self { topology: Arc::clone(&self.topology), weights })
    }

    pub fn node_count(&self) -> usize {
        self.topology.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.topology.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.topology.edges
    }

    pub fn edge(&self, index: usize) -> (usize, usize) {
        self.topology.edges[index]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, index: usize) -> f64 {
        self.weights[index]
    }

    /// `(neighbor, edge index)` pairs incident to `node`, ascending by edge index.
    pub fn neighbors(&self, node: usize) -> &[(usize, usize)] {
        &self.topology.adjacency[node]
    }

    /// True when both graphs have identical node counts and edge lists.
    pub fn same_topology(&self, other: &Graph) -> bool {
        Arc::ptr_eq(&self.topology, &other.topology) || self.topology == other.topology
    }
}

fn check_weights(weights: &[f64]) -> Result<()> {
    match weights.iter().position(|w| !w.is_finite()) {
        Some(index) => Err(Error::InvalidWeight { index, weight: weights[index], reason: "weights must be finite" }),
        None => Ok(()),
    }
}

fn component_count(node_count: usize, edges: &[(usize, usize)]) -> usize {
    let mut uf = UnionFind::new(node_count);
    for &(u, v) in edges {
        uf.union(u, v);
    }
    uf.component_count()
}

/// The edge set of a spanning tree of some parent [`Graph`].
///
/// Edge indices are stored ascending. Construction checks that there are
/// exactly `|V| - 1` distinct edges and that they form no cycle, which
/// together imply that they span the graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeTopology {
    edges: Vec<usize>,
}

impl TreeTopology {
    pub fn new(graph: &Graph, mut edges: Vec<usize>) -> Result<Self> {
        let n = graph.node_count();
        if edges.len() + 1 != n {
            return Err(Error::NotSpanning { reason: format!("{} edges for {} nodes", edges.len(), n) });
        }
        edges.sort_unstable();
        let mut uf = UnionFind::new(n);
        for (i, &e) in edges.iter().enumerate() {
            if e >= graph.edge_count() {
                return Err(Error::EdgeOutOfRange { index: e, edge_count: graph.edge_count() });
            }
            if i > 0 && edges[i - 1] == e {
                return Err(Error::NotSpanning { reason: format!("edge {e} listed twice") });
            }
            let (u, v) = graph.edge(e);
            if !uf.union(u, v) {
                return Err(Error::NotSpanning { reason: format!("edge {e} closes a cycle") });
            }
        }
        Ok(Self { edges })
    }

    /// Ascending edge indices into the parent graph.
    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.edges.binary_search(&edge).is_ok()
    }
}

/// Convenience check used by tests and the harness.
pub fn is_spanning_tree(graph: &Graph, edges: &[usize]) -> bool {
    TreeTopology::new(graph, edges.to_vec()).is_ok()
}

/// Points of a fixed dimension with optional ground-truth labels.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    points: Vec<Vec<f64>>,
    labels: Option<Vec<usize>>,
}

impl PointCloud {
    pub fn new(points: Vec<Vec<f64>>, labels: Option<Vec<usize>>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(crate::error::invalid("points", "point cloud is empty"));
        };
        let dim = first.len();
        if dim == 0 {
            return Err(crate::error::invalid("points", "points must have at least one coordinate"));
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(crate::error::invalid(
                    "points",
                    format!("point {i} has dimension {}, expected {dim}", p.len()),
                ));
            }
            if p.iter().any(|c| !c.is_finite()) {
                return Err(crate::error::invalid("points", format!("point {i} is not finite")));
            }
        }
        if let Some(labels) = &labels {
            if labels.len() != points.len() {
                return Err(crate::error::invalid(
                    "labels",
                    format!("{} labels for {} points", labels.len(), points.len()),
                ));
            }
        }
        Ok(Self { points, labels })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn labels(&self) -> Option<&[usize]> {
        self.labels.as_deref()
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.points[i].iter().zip(&self.points[j]).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::new(3, vec![(0, 1), (0, 2), (1, 2)], vec![1.0, 2.0, 3.0]).unwrap()
    }

    #[test]
    fn rejects_self_loops_and_duplicates() {
        assert!(matches!(Graph::new(2, vec![(0, 0), (0, 1)], vec![1.0, 1.0]), Err(Error::SelfLoop { index: 0, .. })));
        assert!(matches!(
            Graph::new(2, vec![(0, 1), (1, 0)], vec![1.0, 1.0]),
            Err(Error::DuplicateEdge { index: 1, .. })
        ));
        assert!(matches!(Graph::new(2, vec![(0, 5)], vec![1.0]), Err(Error::NodeOutOfRange { node: 5, .. })));
    }

    #[test]
    fn rejects_disconnected() {
        let err = Graph::new(4, vec![(0, 1), (2, 3)], vec![1.0, 1.0]).unwrap_err();
        assert!(matches!(err, Error::Disconnected { components: 2 }));
    }

    #[test]
    fn with_weights_shares_topology() {
        let g = triangle();
        let h = g.with_weights(vec![-1.0, 0.5, 9.0]).unwrap();
        assert!(g.same_topology(&h));
        assert_eq!(h.weight(0), -1.0);
        assert!(g.with_weights(vec![1.0]).is_err());
        assert!(g.with_weights(vec![1.0, f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn tree_topology_validation() {
        let g = triangle();
        let t = TreeTopology::new(&g, vec![2, 0]).unwrap();
        assert_eq!(t.edges(), &[0, 2]);
        assert!(t.contains(2) && !t.contains(1));
        assert!(TreeTopology::new(&g, vec![0]).is_err());
        assert!(TreeTopology::new(&g, vec![0, 0]).is_err());
        assert!(TreeTopology::new(&g, vec![0, 7]).is_err());
        let square = Graph::new(4, vec![(0, 1), (1, 2), (2, 0), (2, 3)], vec![1.0; 4]).unwrap();
        assert!(matches!(TreeTopology::new(&square, vec![0, 1, 2]), Err(Error::NotSpanning { .. })));
    }

    #[test]
    fn point_cloud_checks_dimension() {
        assert!(PointCloud::new(vec![vec![0.0, 1.0], vec![1.0]], None).is_err());
        assert!(PointCloud::new(vec![vec![f64::INFINITY]], None).is_err());
        assert!(PointCloud::new(vec![vec![0.0]], Some(vec![0, 1])).is_err());
        let pc = PointCloud::new(vec![vec![0.0, 0.0], vec![3.0, 4.0]], Some(vec![0, 1])).unwrap();
        assert_eq!(pc.distance(0, 1), 5.0);
        assert_eq!(pc.dim(), 2);
    }
}
