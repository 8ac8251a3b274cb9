use super::Graph;
use crate::error::{Error, Result};

/// An edge with exactly one endpoint inside a node set, together with the
/// endpoint that lies outside it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CrossingEdge {
    pub edge: usize,
    pub outside: usize,
}

/// Edges with exactly one endpoint in `nodes`, ascending by edge index.
///
/// `nodes` must be a non-empty proper subset of the vertex set; otherwise the
/// range would be empty. Duplicate entries in `nodes` are tolerated.
pub fn xor_incident_edges(graph: &Graph, nodes: &[usize]) -> Result<Vec<CrossingEdge>> {
    let n = graph.node_count();
    let mut inside = vec![false; n];
    for &v in nodes {
        if v >= n {
            return Err(Error::NodeOutOfRange { node: v, node_count: n });
        }
        inside[v] = true;
    }
    let members = inside.iter().filter(|&&b| b).count();
    if members == 0 || members == n {
        return Err(Error::DegenerateNodeSet);
    }
    Ok(graph
        .edges()
        .iter()
        .enumerate()
        .filter_map(|(edge, &(u, v))| match (inside[u], inside[v]) {
            (true, false) => Some(CrossingEdge { edge, outside: v }),
            (false, true) => Some(CrossingEdge { edge, outside: u }),
            _ => None,
        })
        .collect())
}
