use rand::Rng;

use super::noise::open_unit;
use crate::error::{invalid, Error, Result};

fn check(utilities: &[f64], sensitivity: f64, epsilon: f64) -> Result<f64> {
    if utilities.is_empty() {
        return Err(Error::EmptyRange);
    }
    if !(sensitivity > 0.0 && sensitivity.is_finite()) {
        return Err(invalid("sensitivity", format!("{sensitivity} must be positive and finite")));
    }
    if !(epsilon > 0.0) {
        return Err(invalid("epsilon", format!("{epsilon} must be positive")));
    }
    if utilities.iter().any(|u| !u.is_finite()) {
        return Err(invalid("utilities", "utilities must be finite"));
    }
    Ok(utilities.iter().copied().fold(f64::NEG_INFINITY, f64::max))
}

/// Exponential mechanism: returns index `i` with probability proportional to
/// `exp(epsilon * u_i / (2 * sensitivity))`.
///
/// Sampling uses the Gumbel-max trick on max-shifted log weights, so no
/// exponential is ever evaluated and arbitrarily large utility gaps are safe.
pub fn exponential_choice<R: Rng + ?Sized>(
    utilities: &[f64],
    sensitivity: f64,
    epsilon: f64,
    rng: &mut R,
) -> Result<usize> {
    let top = check(utilities, sensitivity, epsilon)?;
    let scale = epsilon / (2.0 * sensitivity);
    let mut best = 0;
    let mut best_key = f64::NEG_INFINITY;
    for (i, &u) in utilities.iter().enumerate() {
        let gumbel = -(-open_unit(rng).ln()).ln();
        let key = scale * (u - top) + gumbel;
        if key > best_key {
            best_key = key;
            best = i;
        }
    }
    Ok(best)
}

/// Exact output distribution of [`exponential_choice`], by normalized softmax.
pub fn softmax_probabilities(utilities: &[f64], sensitivity: f64, epsilon: f64) -> Result<Vec<f64>> {
    let top = check(utilities, sensitivity, epsilon)?;
    let scale = epsilon / (2.0 * sensitivity);
    let weights: Vec<f64> = utilities.iter().map(|u| (scale * (u - top)).exp()).collect();
    let total: f64 = weights.iter().sum();
    Ok(weights.into_iter().map(|w| w / total).collect())
}
