use thiserror::Error;

/// Errors raised by graph construction, the privacy mechanisms and the
/// experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: malformed input: {reason}")]
    Malformed { line: usize, reason: String },

    #[error("edge {index} ({u}, {v}) is a self-loop")]
    SelfLoop { index: usize, u: usize, v: usize },

    #[error("edge {index} duplicates the unordered pair ({u}, {v})")]
    DuplicateEdge { index: usize, u: usize, v: usize },

    #[error("node {node} out of range for a graph with {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },

    #[error("graph is disconnected: {components} components")]
    Disconnected { components: usize },

    #[error("weight {weight} on edge {index} is not allowed: {reason}")]
    InvalidWeight { index: usize, weight: f64, reason: &'static str },

    #[error(
        "no connected G(n={n}, p={p}) sample after {attempts} attempts; \
         expected degree p(n-1) = {expected_degree:.3} should exceed ln n = {required:.3}"
    )]
    RetryBudgetExhausted { n: usize, p: f64, attempts: usize, expected_degree: f64, required: f64 },

    #[error("epsilon-graph with radius {radius} is disconnected; radius {suggested} connects it")]
    RadiusTooSmall { radius: f64, suggested: f64 },

    #[error("edge specification is empty")]
    EmptyEdgeSpec,

    #[error("range of candidate edges is empty")]
    EmptyRange,

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("edge index {index} out of range ({edge_count} edges)")]
    EdgeOutOfRange { index: usize, edge_count: usize },

    #[error("edge set is not a spanning tree: {reason}")]
    NotSpanning { reason: String },

    #[error("node set must be a non-empty proper subset of V")]
    DegenerateNodeSet,

    #[error("no crossover: ln h = {ln_h} lies below -1/e")]
    NoCrossover { ln_h: f64 },

    #[error("edge {index} is already cut")]
    AlreadyCut { index: usize },

    #[error("trace is corrupted: {reason}")]
    CorruptTrace { reason: String },

    #[error("empty sample set")]
    EmptySamples,

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { name, reason: reason.into() }
}
