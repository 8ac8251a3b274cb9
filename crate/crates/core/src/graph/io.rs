//! Text formats.
//!
//! Edge list: a `n <node_count>` header, then one `u v w` line per edge.
//! `#` starts a comment. Weights are written with the shortest decimal that
//! round-trips, so re-reading a written graph is bit-exact.
//!
//! Point cloud: CSV, one point per row. An optional header row is detected by
//! a non-numeric field; a header whose last column is `label` (or the
//! `labeled` flag) marks the trailing column as integer labels.

use std::fmt::Write as _;

use super::{Graph, PointCloud};
use crate::error::{Error, Result};

fn malformed(line: usize, reason: impl Into<String>) -> Error {
    Error::Malformed { line, reason: reason.into() }
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut node_count: Option<usize> = None;
    let mut edges = Vec::new();
    let mut weights = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let Some(n) = node_count else {
            match fields.as_slice() {
                ["n", count] => {
                    let count: usize =
                        count.parse().map_err(|_| malformed(line_no, format!("bad node count `{count}`")))?;
                    node_count = Some(count);
                    continue;
                }
                _ => return Err(malformed(line_no, "expected header `n <node_count>`")),
            }
        };
        let [u, v, w] = fields.as_slice() else {
            return Err(malformed(line_no, format!("expected `u v w`, got {} fields", fields.len())));
        };
        let u: usize = u.parse().map_err(|_| malformed(line_no, format!("bad node `{u}`")))?;
        let v: usize = v.parse().map_err(|_| malformed(line_no, format!("bad node `{v}`")))?;
        let w: f64 = w.parse().map_err(|_| malformed(line_no, format!("bad weight `{w}`")))?;
        if !w.is_finite() || w < 0.0 {
            return Err(malformed(line_no, format!("weight {w} must be finite and non-negative")));
        }
        if u >= n || v >= n {
            return Err(Error::NodeOutOfRange { node: u.max(v), node_count: n });
        }
        edges.push((u, v));
        weights.push(w);
    }
    let Some(n) = node_count else {
        return Err(malformed(0, "missing header `n <node_count>`"));
    };
    Graph::new(n, edges, weights)
}

/// Serializes in edge order. Negative (sanitized) weights are written as-is.
pub fn write_graph(graph: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "n {}", graph.node_count()).unwrap();
    for (&(u, v), w) in graph.edges().iter().zip(graph.weights()) {
        writeln!(out, "{u} {v} {w}").unwrap();
    }
    out
}

pub fn parse_point_cloud(text: &str, labeled: bool) -> Result<PointCloud> {
    let mut labeled = labeled;
    let mut points = Vec::new();
    let mut labels = Vec::new();
    let mut first_row = true;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = content.split(',').map(str::trim).collect();
        if first_row {
            first_row = false;
            if fields.iter().any(|f| f.parse::<f64>().is_err()) {
                if fields.last().is_some_and(|f| f.eq_ignore_ascii_case("label")) {
                    labeled = true;
                }
                continue;
            }
        }
        let (coords, label) = if labeled {
            let (last, rest) = fields.split_last().expect("non-empty line");
            let label: usize = last.parse().map_err(|_| malformed(line_no, format!("bad label `{last}`")))?;
            (rest, Some(label))
        } else {
            (fields.as_slice(), None)
        };
        let coords = coords
            .iter()
            .map(|f| f.parse::<f64>().map_err(|_| malformed(line_no, format!("bad coordinate `{f}`"))))
            .collect::<Result<Vec<_>>>()?;
        points.push(coords);
        labels.extend(label);
    }
    PointCloud::new(points, labeled.then_some(labels))
}

pub fn write_point_cloud(cloud: &PointCloud) -> String {
    let mut out = String::new();
    let header: Vec<String> = (0..cloud.dim()).map(|d| format!("x{d}")).collect();
    out.push_str(&header.join(","));
    if cloud.labels().is_some() {
        out.push_str(",label");
    }
    out.push('\n');
    for (i, p) in cloud.points().iter().enumerate() {
        let row: Vec<String> = p.iter().map(|c| c.to_string()).collect();
        out.push_str(&row.join(","));
        if let Some(labels) = cloud.labels() {
            write!(out, ",{}", labels[i]).unwrap();
        }
        out.push('\n');
    }
    out
}
