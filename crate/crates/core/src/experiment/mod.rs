//! Reproducible Monte-Carlo experiments: approximation-error tables for the
//! two private MST mechanisms, and the private clustering pipeline.
//!
//! Every random draw comes from a stream keyed by `(seed, trial, tag,
//! parameters)`, so results do not depend on worker count or scheduling, and
//! adding a mechanism or a parameter value leaves the other cells unchanged.

mod config;
mod output;
mod pipeline;
mod seeds;
mod shapes;

use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::clustering::DbmstcluConfig;
use crate::dp::graph_laplace;
use crate::error::{Error, Result};
use crate::graph::{
    approximation_error, epsilon_graph, erdos_renyi, mst_prim, mst_weight, parse_point_cloud, Graph, PointCloud,
};
use crate::pamst::{pamst, UtilityConfig};

pub use config::{ExperimentConfig, ExperimentKind, GraphSpec, OutputPaths};
pub use output::{emit_results, partition_csv, partition_json, render, write_outputs, OutputFormat};
pub use pipeline::{
    cluster_exact, cluster_graph, run_clustering_pipeline, spent, Mechanism, PipelineMetrics, PipelineOutput,
    PipelineParams,
};
pub use seeds::{sha256_hex, stream_rng, stream_seed, RNG_NAME};
pub use shapes::{generate_shape_dataset, Shape};

/// Mean with a normal-approximation 95% confidence half-width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub mean: f64,
    /// `1.96 * sd / sqrt(n)` with the unbiased sample standard deviation.
    pub half_width: f64,
    /// False for a single sample, where the half-width is reported as 0.
    pub ci_defined: bool,
}

pub fn summarize(values: &[f64]) -> Summary {
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    if n < 2 {
        return Summary { mean, half_width: 0.0, ci_defined: false };
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
    Summary { mean, half_width: 1.96 * var.sqrt() / (n as f64).sqrt(), ci_defined: true }
}

/// One cell of an error table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorTableRow {
    pub density: f64,
    pub epsilon: f64,
    pub mechanism: Mechanism,
    pub trials: usize,
    pub mean_error: f64,
    pub ci_half_width: f64,
    pub ci_defined: bool,
    pub mst_cost_min: f64,
    pub mst_cost_max: f64,
}

/// Aggregated clustering results for one `(epsilon, mechanism)` pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusteringRow {
    pub epsilon: f64,
    pub mechanism: Mechanism,
    pub trials: usize,
    pub mean_ari: Option<f64>,
    pub ari_ci_half_width: Option<f64>,
    /// Fraction of trials with ARI at least 0.9.
    pub ari_at_least_0_9: Option<f64>,
    pub mean_dbcvi: f64,
    pub mean_clusters: f64,
    pub epsilon_spent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Rows {
    ErrorTable(Vec<ErrorTableRow>),
    Clustering(Vec<ClusteringRow>),
}

impl Rows {
    pub fn len(&self) -> usize {
        match self {
            Rows::ErrorTable(r) => r.len(),
            Rows::Clustering(r) => r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub library: &'static str,
    pub version: &'static str,
    /// SHA-256 of the config serialized as compact JSON.
    pub config_hash: String,
    pub seed: u64,
    pub rng: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub provenance: Provenance,
    pub config: ExperimentConfig,
    pub rows: Rows,
}

pub fn provenance(config: &ExperimentConfig) -> Result<Provenance> {
    Ok(Provenance {
        library: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        config_hash: sha256_hex(&serde_json::to_vec(config)?),
        seed: config.seed,
        rng: RNG_NAME,
    })
}

fn with_workers<T: Send>(workers: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
            Ok(pool.install(job))
        }
        None => Ok(job()),
    }
}

/// Runs `config`. Relative point-cloud paths resolve against `base_dir`.
/// `workers` caps the thread count; results do not depend on it.
pub fn run_experiment(
    config: &ExperimentConfig,
    base_dir: Option<&Path>,
    workers: Option<usize>,
) -> Result<ExperimentReport> {
    config.validate()?;
    let rows = with_workers(workers, || match config.kind {
        ExperimentKind::ErrorTable => run_error_experiment(config).map(Rows::ErrorTable),
        ExperimentKind::Clustering => run_clustering_experiment(config, base_dir).map(Rows::Clustering),
    })??;
    Ok(ExperimentReport { provenance: provenance(config)?, config: config.clone(), rows })
}

/// Approximation error of one mechanism on one graph.
pub fn mechanism_error<R: rand::Rng + ?Sized>(
    graph: &Graph,
    mechanism: Mechanism,
    epsilon: f64,
    normalize: bool,
    rng: &mut R,
) -> Result<f64> {
    let tree = match mechanism {
        Mechanism::Pamst => {
            let cfg = if normalize { UtilityConfig::normalized(graph) } else { UtilityConfig::raw() };
            pamst(graph, epsilon, cfg, None, rng)?.0
        }
        Mechanism::LaplaceMst => mst_prim(&graph_laplace(graph, epsilon, rng)?),
    };
    approximation_error(graph, &tree)
}

struct TrialOutcome {
    mst_cost: f64,
    /// `errors[eps_index * mechanisms + mech_index]`.
    errors: Vec<f64>,
}

/// Error table over `densities x epsilons x mechanisms`, rows in that order.
pub fn run_error_experiment(config: &ExperimentConfig) -> Result<Vec<ErrorTableRow>> {
    config.validate()?;
    let GraphSpec::ErdosRenyi { nodes, w_low, w_high } = config.graph else {
        return Err(Error::Config("error_table needs an erdos_renyi graph source".into()));
    };
    let mut rows = Vec::new();
    for &p in &config.densities {
        let outcomes: Vec<TrialOutcome> = (0..config.trials)
            .into_par_iter()
            .map(|trial| {
                let t = trial as u64;
                let graph = erdos_renyi(nodes, p, w_low, w_high, stream_seed(config.seed, t, "graph", &[p]))?;
                let mut errors = Vec::with_capacity(config.epsilons.len() * config.mechanisms.len());
                for &eps in &config.epsilons {
                    for &m in &config.mechanisms {
                        let mut rng = stream_rng(config.seed, t, m.tag(), &[p, eps]);
                        errors.push(mechanism_error(&graph, m, eps, config.normalize, &mut rng)?);
                    }
                }
                Ok(TrialOutcome { mst_cost: mst_weight(&graph), errors })
            })
            .collect::<Result<_>>()?;
        let mst_cost_min = outcomes.iter().map(|o| o.mst_cost).fold(f64::INFINITY, f64::min);
        let mst_cost_max = outcomes.iter().map(|o| o.mst_cost).fold(f64::NEG_INFINITY, f64::max);
        for (ei, &eps) in config.epsilons.iter().enumerate() {
            for (mi, &m) in config.mechanisms.iter().enumerate() {
                let k = ei * config.mechanisms.len() + mi;
                let errors: Vec<f64> = outcomes.iter().map(|o| o.errors[k]).collect();
                let s = summarize(&errors);
                rows.push(ErrorTableRow {
                    density: p,
                    epsilon: eps,
                    mechanism: m,
                    trials: config.trials,
                    mean_error: s.mean,
                    ci_half_width: s.half_width,
                    ci_defined: s.ci_defined,
                    mst_cost_min,
                    mst_cost_max,
                });
            }
        }
    }
    Ok(rows)
}

/// Loads or generates the point cloud named by a clustering config.
pub fn load_cloud(config: &ExperimentConfig, base_dir: Option<&Path>) -> Result<(PointCloud, f64)> {
    match &config.graph {
        GraphSpec::PointCloud { path, radius, labeled } => {
            let full = match base_dir {
                Some(base) if path.is_relative() => base.join(path),
                _ => path.clone(),
            };
            let text = std::fs::read_to_string(&full)?;
            Ok((parse_point_cloud(&text, *labeled)?, *radius))
        }
        GraphSpec::Shape { shape, n, noise_scale, radius } => {
            Ok((generate_shape_dataset(shape, *n, *noise_scale, config.seed)?, *radius))
        }
        GraphSpec::ErdosRenyi { .. } => {
            Err(Error::Config("clustering needs a point_cloud or shape graph source".into()))
        }
    }
}

/// Clustering table over `epsilons x mechanisms`, rows in that order. The
/// epsilon-graph is built once; each trial redraws only the privacy noise.
pub fn run_clustering_experiment(config: &ExperimentConfig, base_dir: Option<&Path>) -> Result<Vec<ClusteringRow>> {
    config.validate()?;
    let (cloud, radius) = load_cloud(config, base_dir)?;
    let graph = epsilon_graph(&cloud, radius)?;
    let clustering = DbmstcluConfig { strict: config.strict };
    let mut rows = Vec::new();
    for &eps in &config.epsilons {
        for &m in &config.mechanisms {
            let params = PipelineParams { epsilon: eps, mechanism: m, normalize: config.normalize, clustering };
            let runs: Vec<(PipelineMetrics, f64)> = (0..config.trials)
                .into_par_iter()
                .map(|trial| {
                    let mut rng = stream_rng(config.seed, trial as u64, m.tag(), &[eps]);
                    let out = cluster_graph(&graph, cloud.labels(), &params, &mut rng)?;
                    Ok((out.metrics.clone(), spent(&out)?.epsilon))
                })
                .collect::<Result<_>>()?;
            let n = runs.len() as f64;
            let aris: Option<Vec<f64>> = runs.iter().map(|(m, _)| m.ari).collect();
            let ari = aris.as_deref().map(summarize);
            rows.push(ClusteringRow {
                epsilon: eps,
                mechanism: m,
                trials: config.trials,
                mean_ari: ari.map(|s| s.mean),
                ari_ci_half_width: ari.map(|s| s.half_width),
                ari_at_least_0_9: aris.as_deref().map(|a| a.iter().filter(|&&x| x >= 0.9).count() as f64 / n),
                mean_dbcvi: runs.iter().map(|(m, _)| m.dbcvi).sum::<f64>() / n,
                mean_clusters: runs.iter().map(|(m, _)| m.cluster_count as f64).sum::<f64>() / n,
                epsilon_spent: runs[0].1,
            });
        }
    }
    Ok(rows)
}
