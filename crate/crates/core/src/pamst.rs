//! Private approximate minimum spanning tree (PAMST).
//!
//! Prim-style growth where each new edge is drawn by the exponential mechanism
//! from the edges crossing the current node set, each draw spending
//! `epsilon / (|V| - 1)`. The utility of a candidate is minus its weight gap to
//! the lightest candidate of the same range.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dp::{exponential_choice, sample_laplace, BudgetLedger, PrivacyParams};
use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, TreeTopology};

/// Utility sensitivity. `1` for raw weights, `1/|E|` when weights are
/// normalized for comparison with the graph-based Laplace mechanism.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UtilityConfig {
    pub sensitivity: f64,
}

impl UtilityConfig {
    pub fn new(sensitivity: f64) -> Result<Self> {
        if !(sensitivity > 0.0 && sensitivity.is_finite()) {
            return Err(invalid("sensitivity", format!("{sensitivity} must be positive and finite")));
        }
        Ok(Self { sensitivity })
    }

    pub fn raw() -> Self {
        Self { sensitivity: 1.0 }
    }

    pub fn normalized(graph: &Graph) -> Self {
        Self { sensitivity: 1.0 / graph.edge_count() as f64 }
    }
}

impl Default for UtilityConfig {
    fn default() -> Self {
        Self::raw()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PamstStep {
    pub range_size: usize,
    pub range_min_weight: f64,
    pub chosen_edge: usize,
    pub chosen_weight: f64,
}

/// Per-step record of one PAMST run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PamstTrace {
    pub epsilon: f64,
    pub per_step_epsilon: f64,
    pub sensitivity: f64,
    pub start: usize,
    pub steps: Vec<PamstStep>,
}

impl PamstTrace {
    /// Charges the topology release to `ledger`.
    pub fn record_into(&self, ledger: &mut BudgetLedger) {
        ledger.record("pamst-topology", PrivacyParams { epsilon: self.epsilon, delta: 0.0 });
    }
}

/// `u_i = -|w(r_i) - min_r w(r)|` over the range.
pub fn step_utilities(graph: &Graph, range: &[usize]) -> Result<Vec<f64>> {
    if range.is_empty() {
        return Err(Error::EmptyRange);
    }
    for &e in range {
        if e >= graph.edge_count() {
            return Err(Error::EdgeOutOfRange { index: e, edge_count: graph.edge_count() });
        }
    }
    let min = range.iter().map(|&e| graph.weight(e)).fold(f64::INFINITY, f64::min);
    Ok(range.iter().map(|&e| -(graph.weight(e) - min).abs()).collect())
}

/// Runs PAMST from `start` (node 0 by default).
///
/// The crossing range is maintained incrementally: when a node joins, its
/// edges to outside nodes enter the range and its edges to inside nodes
/// leave it. This yields exactly the xor-incident set at every step.
pub fn pamst<R: Rng + ?Sized>(
    graph: &Graph,
    epsilon: f64,
    config: UtilityConfig,
    start: Option<usize>,
    rng: &mut R,
) -> Result<(TreeTopology, PamstTrace)> {
    let n = graph.node_count();
    if n < 2 {
        return Err(invalid("graph", "PAMST needs at least two nodes"));
    }
    if !(epsilon > 0.0) {
        return Err(invalid("epsilon", format!("{epsilon} must be positive")));
    }
    let config = UtilityConfig::new(config.sensitivity)?;
    let start = start.unwrap_or(0);
    if start >= n {
        return Err(Error::NodeOutOfRange { node: start, node_count: n });
    }
    let per_step_epsilon = epsilon / (n - 1) as f64;

    const ABSENT: usize = usize::MAX;
    let mut in_tree = vec![false; n];
    let mut range: Vec<usize> = Vec::new();
    let mut position = vec![ABSENT; graph.edge_count()];
    let mut utilities: Vec<f64> = Vec::new();
    let mut chosen = Vec::with_capacity(n - 1);
    let mut steps = Vec::with_capacity(n - 1);

    let admit = |v: usize, in_tree: &mut [bool], range: &mut Vec<usize>, position: &mut [usize]| {
        in_tree[v] = true;
        for &(other, e) in graph.neighbors(v) {
            if in_tree[other] {
                let at = position[e];
                let last = *range.last().expect("edge is in range");
                range.swap_remove(at);
                if last != e {
                    position[last] = at;
                }
                position[e] = ABSENT;
            } else {
                position[e] = range.len();
                range.push(e);
            }
        }
    };

    admit(start, &mut in_tree, &mut range, &mut position);
    for _ in 1..n {
        let min = range.iter().map(|&e| graph.weight(e)).fold(f64::INFINITY, f64::min);
        utilities.clear();
        utilities.extend(range.iter().map(|&e| -(graph.weight(e) - min).abs()));
        let pick = exponential_choice(&utilities, config.sensitivity, per_step_epsilon, rng)?;
        let edge = range[pick];
        steps.push(PamstStep {
            range_size: range.len(),
            range_min_weight: min,
            chosen_edge: edge,
            chosen_weight: graph.weight(edge),
        });
        chosen.push(edge);
        let (u, v) = graph.edge(edge);
        let outside = if in_tree[u] { v } else { u };
        admit(outside, &mut in_tree, &mut range, &mut position);
    }

    let tree = TreeTopology::new(graph, chosen)?;
    let trace = PamstTrace { epsilon, per_step_epsilon, sensitivity: config.sensitivity, start, steps };
    Ok((tree, trace))
}

/// Sum of the per-step range minima.
pub fn w_star(trace: &PamstTrace) -> f64 {
    trace.steps.iter().map(|s| s.range_min_weight).sum()
}

/// Tree topology plus Laplace-sanitized weights, aligned with
/// `topology.edges()`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedRelease {
    pub topology: TreeTopology,
    pub weights: Vec<f64>,
}

/// Releases the weights of the `|V| - 1` tree edges with Laplace(1/epsilon)
/// noise and charges the release to `ledger`. Non-tree weights are never
/// touched.
pub fn release_weighted_tree<R: Rng + ?Sized>(
    graph: &Graph,
    tree: &TreeTopology,
    epsilon_weights: f64,
    ledger: &mut BudgetLedger,
    rng: &mut R,
) -> Result<WeightedRelease> {
    let params = PrivacyParams::pure(epsilon_weights)?;
    let tree = TreeTopology::new(graph, tree.edges().to_vec())?;
    let scale = 1.0 / epsilon_weights;
    let weights = tree.edges().iter().map(|&e| graph.weight(e) + sample_laplace(scale, rng)).collect();
    ledger.record("tree-weights", params);
    Ok(WeightedRelease { topology: tree, weights })
}
