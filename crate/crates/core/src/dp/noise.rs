use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{invalid, Result};
use crate::graph::Graph;

/// Uniform draw on the open interval (0, 1), symmetric about 1/2.
pub fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}

/// One draw from Laplace(0, `scale`) by inverting the CDF:
/// `u ~ U(-1/2, 1/2)`, `x = -scale * sgn(u) * ln(1 - 2|u|)`.
pub fn sample_laplace<R: Rng + ?Sized>(scale: f64, rng: &mut R) -> f64 {
    debug_assert!(scale > 0.0);
    let u = open_unit(rng) - 0.5;
    -scale * u.signum() * (1.0 - 2.0 * u.abs()).ln()
}

/// Standard deviation of the Gaussian mechanism, `c * delta2 / epsilon` with
/// `c = sqrt(2 ln(1.25 / delta)) + 1e-9` so that `c^2 > 2 ln(1.25/delta)` holds
/// strictly.
pub fn gaussian_sigma(delta2_sensitivity: f64, epsilon: f64, delta: f64) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(invalid("epsilon", format!("{epsilon} is outside (0, 1)")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(invalid("delta", format!("{delta} is outside (0, 1)")));
    }
    if !(delta2_sensitivity > 0.0 && delta2_sensitivity.is_finite()) {
        return Err(invalid("delta2_sensitivity", "must be positive and finite"));
    }
    let c = (2.0 * (1.25 / delta).ln()).sqrt() + 1e-9;
    Ok(c * delta2_sensitivity / epsilon)
}

pub fn sample_gaussian<R: Rng + ?Sized>(delta2_sensitivity: f64, epsilon: f64, delta: f64, rng: &mut R) -> Result<f64> {
    let sigma = gaussian_sigma(delta2_sensitivity, epsilon, delta)?;
    let z: f64 = StandardNormal.sample(rng);
    Ok(sigma * z)
}

/// Adds i.i.d. Laplace(1/epsilon) noise to every edge weight. The topology is
/// shared with the input; negative noisy weights are kept.
pub fn graph_laplace<R: Rng + ?Sized>(graph: &Graph, epsilon: f64, rng: &mut R) -> Result<Graph> {
    if !(epsilon > 0.0) {
        return Err(invalid("epsilon", format!("{epsilon} must be positive")));
    }
    let scale = 1.0 / epsilon;
    let noisy = graph.weights().iter().map(|w| w + sample_laplace(scale, rng)).collect();
    graph.with_weights(noisy)
}
