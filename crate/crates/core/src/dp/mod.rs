//! Differential-privacy primitives: noise samplers, the graph-based Laplace
//! sanitizer, exponential-mechanism selection, budget composition and an
//! empirical max-divergence audit.
//!
//! Every sampler takes an explicit RNG handle; nothing here holds shared
//! mutable state.

mod audit;
mod exponential;
mod noise;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub use audit::{empirical_max_divergence, MaxDivergence, MIN_AUDIT_SAMPLES};
pub use exponential::{exponential_choice, softmax_probabilities};
pub use noise::{gaussian_sigma, graph_laplace, open_unit, sample_gaussian, sample_laplace};

/// An `(epsilon, delta)` privacy level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrivacyParams {
    pub epsilon: f64,
    pub delta: f64,
}

impl PrivacyParams {
    pub fn new(epsilon: f64, delta: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(invalid("epsilon", format!("{epsilon} must be positive and finite")));
        }
        if !(0.0..1.0).contains(&delta) {
            return Err(invalid("delta", format!("{delta} is outside [0, 1)")));
        }
        Ok(Self { epsilon, delta })
    }

    /// Pure `epsilon`-DP.
    pub fn pure(epsilon: f64) -> Result<Self> {
        Self::new(epsilon, 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub purpose: String,
    #[serde(flatten)]
    pub params: PrivacyParams,
}

/// Ordered record of every mechanism invocation charged against a budget.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BudgetLedger {
    pub entries: Vec<LedgerEntry>,
}

impl BudgetLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, purpose: impl Into<String>, params: PrivacyParams) {
        self.entries.push(LedgerEntry { purpose: purpose.into(), params });
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> Result<PrivacyParams> {
        compose(self)
    }
}

/// Simple (and adaptive) composition: budgets add up.
pub fn compose(ledger: &BudgetLedger) -> Result<PrivacyParams> {
    if ledger.is_empty() {
        return Err(Error::InvalidParameter { name: "ledger", reason: "nothing to compose".into() });
    }
    let (epsilon, delta) =
        ledger.entries.iter().fold((0.0, 0.0), |(e, d), entry| (e + entry.params.epsilon, d + entry.params.delta));
    Ok(PrivacyParams { epsilon, delta })
}
