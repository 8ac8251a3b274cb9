use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::clustering::{adjusted_rand_index, dbmstclu_with, ClusterPartition, DbmstcluConfig, WeightedTree};
use crate::dp::{compose, graph_laplace, BudgetLedger, PrivacyParams};
use crate::error::{invalid, Result};
use crate::graph::{epsilon_graph, mst_prim, Graph, PointCloud};
use crate::pamst::{pamst, release_weighted_tree, UtilityConfig};

/// How the private spanning tree is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mechanism {
    /// PAMST topology, then Laplace release of the tree weights.
    Pamst,
    /// Laplace noise on every edge weight, then an exact MST.
    LaplaceMst,
}

impl Mechanism {
    pub fn tag(self) -> &'static str {
        match self {
            Mechanism::Pamst => "pamst",
            Mechanism::LaplaceMst => "laplace_mst",
        }
    }
}

impl std::fmt::Display for Mechanism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for Mechanism {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pamst" => Ok(Mechanism::Pamst),
            "laplace_mst" | "laplace" => Ok(Mechanism::LaplaceMst),
            other => Err(invalid("mechanism", format!("unknown mechanism `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineParams {
    /// Total privacy budget. PAMST splits it evenly between topology and
    /// weights; the Laplace branch spends all of it on the edge weights.
    pub epsilon: f64,
    pub mechanism: Mechanism,
    /// PAMST utility sensitivity `1/|E|` instead of 1.
    pub normalize: bool,
    pub clustering: DbmstcluConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineMetrics {
    pub dbcvi: f64,
    pub cluster_count: usize,
    pub ari: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub tree: WeightedTree,
    pub partition: ClusterPartition,
    pub metrics: PipelineMetrics,
    pub ledger: BudgetLedger,
}

/// Builds the private tree of `graph` and clusters it.
pub fn cluster_graph<R: Rng + ?Sized>(
    graph: &Graph,
    labels: Option<&[usize]>,
    params: &PipelineParams,
    rng: &mut R,
) -> Result<PipelineOutput> {
    PrivacyParams::pure(params.epsilon)?;
    let mut ledger = BudgetLedger::new();
    let tree = match params.mechanism {
        Mechanism::Pamst => {
            let half = params.epsilon / 2.0;
            let config = if params.normalize { UtilityConfig::normalized(graph) } else { UtilityConfig::raw() };
            let (topology, trace) = pamst(graph, half, config, None, rng)?;
            trace.record_into(&mut ledger);
            let release = release_weighted_tree(graph, &topology, half, &mut ledger, rng)?;
            WeightedTree::from_release(graph, &release.topology, &release.weights)?
        }
        Mechanism::LaplaceMst => {
            let noisy = graph_laplace(graph, params.epsilon, rng)?;
            ledger.record("graph-weights", PrivacyParams::pure(params.epsilon)?);
            let topology = mst_prim(&noisy);
            let weights: Vec<f64> = topology.edges().iter().map(|&e| noisy.weight(e)).collect();
            WeightedTree::from_release(graph, &topology, &weights)?
        }
    };
    let (tree, partition) = finish(tree, params.clustering);
    let metrics = metrics(&partition, labels)?;
    Ok(PipelineOutput { tree, partition, metrics, ledger })
}

/// Points to epsilon-graph, then [`cluster_graph`].
pub fn run_clustering_pipeline<R: Rng + ?Sized>(
    cloud: &PointCloud,
    radius: f64,
    params: &PipelineParams,
    rng: &mut R,
) -> Result<PipelineOutput> {
    let graph = epsilon_graph(cloud, radius)?;
    cluster_graph(&graph, cloud.labels(), params, rng)
}

/// DBMSTClu on the exact MST of `graph`; no privacy.
pub fn cluster_exact(graph: &Graph, labels: Option<&[usize]>, clustering: DbmstcluConfig) -> Result<PipelineOutput> {
    let tree = WeightedTree::from_graph(graph, &mst_prim(graph))?;
    let (tree, partition) = finish(tree, clustering);
    let metrics = metrics(&partition, labels)?;
    Ok(PipelineOutput { tree, partition, metrics, ledger: BudgetLedger::new() })
}

fn finish(tree: WeightedTree, clustering: DbmstcluConfig) -> (WeightedTree, ClusterPartition) {
    let partition = dbmstclu_with(&tree, clustering).partition;
    (tree, partition)
}

fn metrics(partition: &ClusterPartition, labels: Option<&[usize]>) -> Result<PipelineMetrics> {
    let ari = labels.map(|l| adjusted_rand_index(l, partition.labels())).transpose()?;
    Ok(PipelineMetrics { dbcvi: partition.dbcvi(), cluster_count: partition.cluster_count(), ari })
}

/// Composed budget of a pipeline run.
pub fn spent(output: &PipelineOutput) -> Result<PrivacyParams> {
    compose(&output.ledger)
}
