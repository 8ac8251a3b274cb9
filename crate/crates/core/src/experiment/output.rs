use std::path::Path;

use serde::Serialize;

use crate::clustering::ClusterPartition;
use crate::error::{invalid, Result};
use crate::experiment::{ExperimentReport, Rows};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(invalid("format", format!("unknown format `{other}`"))),
        }
    }
}

fn csv_rows<T: Serialize>(rows: &[T]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    w.into_inner().map_err(|e| std::io::Error::other(e.to_string()).into())
}

/// Renders a report. CSV holds the rows only, in a fixed column order; JSON
/// holds provenance, the config and the rows.
pub fn render(report: &ExperimentReport, format: OutputFormat) -> Result<Vec<u8>> {
    match format {
        OutputFormat::Csv => match &report.rows {
            Rows::ErrorTable(r) => csv_rows(r),
            Rows::Clustering(r) => csv_rows(r),
        },
        OutputFormat::Json => {
            let mut bytes = serde_json::to_vec_pretty(report)?;
            bytes.push(b'\n');
            Ok(bytes)
        }
    }
}

pub fn emit_results(report: &ExperimentReport, format: OutputFormat, path: &Path) -> Result<()> {
    std::fs::write(path, render(report, format)?)?;
    Ok(())
}

/// Writes whichever outputs the report's config names, resolving relative
/// paths against `base_dir`.
pub fn write_outputs(report: &ExperimentReport, base_dir: Option<&Path>) -> Result<()> {
    let resolve = |p: &Path| match base_dir {
        Some(base) if p.is_relative() => base.join(p),
        _ => p.to_path_buf(),
    };
    if let Some(p) = &report.config.output.csv {
        emit_results(report, OutputFormat::Csv, &resolve(p))?;
    }
    if let Some(p) = &report.config.output.json {
        emit_results(report, OutputFormat::Json, &resolve(p))?;
    }
    Ok(())
}

/// `node,cluster` lines under a header.
pub fn partition_csv(partition: &ClusterPartition) -> String {
    let mut out = String::from("node,cluster\n");
    for (node, cluster) in partition.labels().iter().enumerate() {
        out.push_str(&format!("{node},{cluster}\n"));
    }
    out
}

pub fn partition_json(partition: &ClusterPartition) -> Result<String> {
    Ok(serde_json::to_string_pretty(partition)? + "\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clustering::{perform_cut, WeightedTree};
    use crate::experiment::{run_experiment, ExperimentConfig};

    fn config() -> ExperimentConfig {
        ExperimentConfig::from_json(
            r#"{"kind":"error_table","graph":{"source":"erdos_renyi","nodes":12},
                "epsilons":[1.0],"densities":[0.5],"trials":3,"seed":5,"mechanisms":["pamst","laplace_mst"]}"#,
        )
        .unwrap()
    }

    #[test]
    fn csv_columns_are_fixed() {
        let report = run_experiment(&config(), None, None).unwrap();
        let text = String::from_utf8(render(&report, OutputFormat::Csv).unwrap()).unwrap();
        let header = text.lines().next().unwrap();
        assert_eq!(
            header,
            "density,epsilon,mechanism,trials,mean_error,ci_half_width,ci_defined,mst_cost_min,mst_cost_max"
        );
        assert_eq!(text.lines().count(), 1 + report.rows.len());
    }

    #[test]
    fn json_carries_provenance_and_config() {
        let report = run_experiment(&config(), None, None).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&render(&report, OutputFormat::Json).unwrap()).unwrap();
        assert_eq!(v["provenance"]["seed"], 5);
        assert_eq!(v["provenance"]["config_hash"].as_str().unwrap().len(), 64);
        assert!(v["provenance"]["version"].is_string());
        let back: ExperimentConfig = serde_json::from_value(v["config"].clone()).unwrap();
        assert_eq!(back, report.config);
    }

    #[test]
    fn partition_outputs() {
        let t = WeightedTree::new(3, vec![(0, 1), (1, 2)], vec![0.1, 0.9]).unwrap();
        let p = perform_cut(&crate::clustering::ClusterPartition::single(&t), 1, &t).unwrap();
        assert_eq!(partition_csv(&p), "node,cluster\n0,0\n1,0\n2,1\n");
        let v: serde_json::Value = serde_json::from_str(&partition_json(&p).unwrap()).unwrap();
        assert_eq!(v["cut_edges"], serde_json::json!([1]));
        assert!((v["dbcvi"].as_f64().unwrap() - 0.9259259259259259).abs() < 1e-12);
    }
}
