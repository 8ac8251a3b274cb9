use std::collections::BTreeMap;

use crate::error::{invalid, Error, Result};

/// Below this many samples per side the estimate is too noisy to report.
pub const MIN_AUDIT_SAMPLES: usize = 1000;

/// Result of [`empirical_max_divergence`]. `value` is `+inf` when some
/// outcome seen under `x` (above `delta`) never occurs under `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxDivergence<T> {
    pub value: f64,
    pub outcome: Option<T>,
}

impl<T> MaxDivergence<T> {
    pub fn is_infinite(&self) -> bool {
        self.value == f64::INFINITY
    }
}

fn frequencies<T: Ord + Clone>(samples: &[T]) -> BTreeMap<T, f64> {
    let mut counts = BTreeMap::new();
    for s in samples {
        *counts.entry(s.clone()).or_insert(0usize) += 1;
    }
    let n = samples.len() as f64;
    counts.into_iter().map(|(k, c)| (k, c as f64 / n)).collect()
}

/// Empirical δ-approximate max divergence between two sampled distributions,
/// maximized over single outcomes:
/// `max_o ln((P_x(o) - delta) / P_y(o))` over outcomes with `P_x(o) > delta`.
///
/// This is a statistical diagnostic for a mechanism's privacy loss on one
/// pair of inputs. It cannot certify differential privacy.
pub fn empirical_max_divergence<T: Ord + Clone>(
    samples_x: &[T],
    samples_y: &[T],
    delta: f64,
) -> Result<MaxDivergence<T>> {
    if samples_x.is_empty() || samples_y.is_empty() {
        return Err(Error::EmptySamples);
    }
    if samples_x.len() < MIN_AUDIT_SAMPLES || samples_y.len() < MIN_AUDIT_SAMPLES {
        return Err(invalid("samples", format!("need at least {MIN_AUDIT_SAMPLES} samples per side")));
    }
    if !(0.0..1.0).contains(&delta) {
        return Err(invalid("delta", format!("{delta} is outside [0, 1)")));
    }
    let px = frequencies(samples_x);
    let py = frequencies(samples_y);
    let mut best = MaxDivergence { value: f64::NEG_INFINITY, outcome: None };
    for (outcome, &p) in &px {
        if p <= delta {
            continue;
        }
        let value = match py.get(outcome) {
            Some(&q) => ((p - delta) / q).ln(),
            None => f64::INFINITY,
        };
        if value > best.value {
            best = MaxDivergence { value, outcome: Some(outcome.clone()) };
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn repeat(spec: &[(char, usize)]) -> Vec<char> {
        spec.iter().flat_map(|&(c, k)| std::iter::repeat_n(c, k)).collect()
    }

    #[test]
    fn identical_distributions() {
        let x = repeat(&[('a', 600), ('b', 400)]);
        let d = empirical_max_divergence(&x, &x, 0.0).unwrap();
        assert_eq!(d.value, 0.0);
    }

    #[test]
    fn uniform_against_skewed() {
        let x = repeat(&[('a', 500), ('b', 500)]);
        let y = repeat(&[('a', 900), ('b', 100)]);
        let d = empirical_max_divergence(&x, &y, 0.0).unwrap();
        assert!((d.value - 5.0f64.ln()).abs() < 1e-12);
        assert_eq!(d.outcome, Some('b'));
    }

    #[test]
    fn missing_outcome_is_infinite() {
        let x = repeat(&[('a', 500), ('c', 500)]);
        let y = repeat(&[('a', 1000)]);
        let d = empirical_max_divergence(&x, &y, 0.0).unwrap();
        assert!(d.is_infinite());
        assert_eq!(d.outcome, Some('c'));
        // With delta above P_x(c) the unseen outcome no longer counts.
        let d = empirical_max_divergence(&x, &y, 0.6).unwrap();
        assert!(d.value == f64::NEG_INFINITY && d.outcome.is_none());
    }

    #[test]
    fn errors() {
        let empty: Vec<char> = Vec::new();
        let x = repeat(&[('a', 1000)]);
        assert!(matches!(empirical_max_divergence(&empty, &x, 0.0), Err(Error::EmptySamples)));
        assert!(empirical_max_divergence(&x[..10], &x, 0.0).is_err());
    }
}
