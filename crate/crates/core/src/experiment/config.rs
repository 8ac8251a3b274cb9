use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiment::pipeline::Mechanism;
use crate::experiment::shapes::Shape;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    ErrorTable,
    Clustering,
}

/// Where the input graph of each trial comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case", deny_unknown_fields)]
pub enum GraphSpec {
    /// A fresh `G(nodes, p)` per trial and density, weights uniform on
    /// `[w_low, w_high)`.
    ErdosRenyi {
        nodes: usize,
        #[serde(default)]
        w_low: f64,
        #[serde(default = "default_w_high")]
        w_high: f64,
    },
    /// A point-cloud CSV turned into an epsilon-graph.
    PointCloud {
        path: PathBuf,
        radius: f64,
        #[serde(default)]
        labeled: bool,
    },
    /// A generated two-cluster shape turned into an epsilon-graph. The cloud
    /// is drawn once from the experiment seed and shared by all trials.
    Shape {
        shape: Shape,
        n: usize,
        #[serde(default = "default_noise")]
        noise_scale: f64,
        radius: f64,
    },
}

fn default_w_high() -> f64 {
    10.0
}

fn default_noise() -> f64 {
    1.0
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputPaths {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub json: Option<PathBuf>,
}

/// Declarative description of one Monte-Carlo experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub graph: GraphSpec,
    pub epsilons: Vec<f64>,
    /// Erdos-Renyi edge probabilities; error tables only.
    #[serde(default)]
    pub densities: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub mechanisms: Vec<Mechanism>,
    /// PAMST utility sensitivity `1/|E|` instead of 1.
    #[serde(default = "default_true")]
    pub normalize: bool,
    /// Strict-improvement acceptance in DBMSTClu; clustering only.
    #[serde(default)]
    pub strict: bool,
    #[serde(default)]
    pub output: OutputPaths,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(bad("trials must be at least 1"));
        }
        if self.epsilons.is_empty() {
            return Err(bad("epsilons is empty"));
        }
        if let Some(e) = self.epsilons.iter().find(|e| !(**e > 0.0 && e.is_finite())) {
            return Err(bad(format!("epsilon {e} is not a positive finite number")));
        }
        if self.mechanisms.is_empty() {
            return Err(bad("mechanisms is empty"));
        }
        let mut seen = self.mechanisms.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != self.mechanisms.len() {
            return Err(bad("mechanisms lists a mechanism twice"));
        }
        match (&self.kind, &self.graph) {
            (ExperimentKind::ErrorTable, GraphSpec::ErdosRenyi { nodes, w_low, w_high }) => {
                if *nodes < 2 {
                    return Err(bad("nodes must be at least 2"));
                }
                if !(w_low < w_high) || !w_low.is_finite() || !w_high.is_finite() || *w_low < 0.0 {
                    return Err(bad(format!("weight range [{w_low}, {w_high}) is invalid")));
                }
                if self.densities.is_empty() {
                    return Err(bad("densities is empty"));
                }
                if let Some(p) = self.densities.iter().find(|p| !(**p > 0.0 && **p <= 1.0)) {
                    return Err(bad(format!("density {p} is outside (0, 1]")));
                }
            }
            (ExperimentKind::ErrorTable, _) => return Err(bad("error_table needs an erdos_renyi graph source")),
            (ExperimentKind::Clustering, GraphSpec::ErdosRenyi { .. }) => {
                return Err(bad("clustering needs a point_cloud or shape graph source"))
            }
            (ExperimentKind::Clustering, GraphSpec::PointCloud { radius, .. } | GraphSpec::Shape { radius, .. }) => {
                if !(*radius > 0.0 && radius.is_finite()) {
                    return Err(bad(format!("radius {radius} must be positive")));
                }
                if !self.densities.is_empty() {
                    return Err(bad("densities only apply to error_table experiments"));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ERROR_TABLE: &str = r#"{
        "kind": "error_table",
        "graph": {"source": "erdos_renyi", "nodes": 30},
        "epsilons": [0.1, 1.0],
        "densities": [0.3],
        "trials": 5,
        "seed": 1,
        "mechanisms": ["pamst", "laplace_mst"]
    }"#;

    #[test]
    fn parses_with_defaults() {
        let cfg = ExperimentConfig::from_json(ERROR_TABLE).unwrap();
        assert_eq!(cfg.graph, GraphSpec::ErdosRenyi { nodes: 30, w_low: 0.0, w_high: 10.0 });
        assert!(cfg.normalize && !cfg.strict);
        assert_eq!(cfg.output, OutputPaths::default());
        let again: ExperimentConfig = serde_json::from_str(&serde_json::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(again, cfg);
    }

    #[test]
    fn shape_source() {
        let cfg = ExperimentConfig::from_json(
            r#"{"kind":"clustering","graph":{"source":"shape","shape":{"kind":"blobs","separation":25},"n":60,"radius":6},
                "epsilons":[1],"trials":2,"seed":3,"mechanisms":["pamst"]}"#,
        )
        .unwrap();
        let GraphSpec::Shape { shape, n, noise_scale, .. } = cfg.graph else { panic!() };
        assert_eq!(shape, Shape::Blobs { separation: 25.0, radius: 2.0 });
        assert_eq!((n, noise_scale), (60, 1.0));
    }

    #[test]
    fn rejects_invalid() {
        let base: serde_json::Value = serde_json::from_str(ERROR_TABLE).unwrap();
        let variant = |key: &str, value: serde_json::Value| {
            let mut v = base.clone();
            v[key] = value;
            ExperimentConfig::from_json(&v.to_string())
        };
        assert!(variant("trials", 0.into()).is_err());
        assert!(variant("epsilons", serde_json::json!([0.0])).is_err());
        assert!(variant("densities", serde_json::json!([1.5])).is_err());
        assert!(variant("mechanisms", serde_json::json!(["pamst", "pamst"])).is_err());
        assert!(variant("mechanisms", serde_json::json!(["gauss"])).is_err());
        assert!(variant("colour", "red".into()).is_err());
        assert!(variant("kind", "clustering".into()).is_err());
    }
}
