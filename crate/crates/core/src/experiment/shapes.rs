use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::experiment::seeds::stream_rng;
use crate::graph::PointCloud;

/// Two-cluster planar shapes. Points are sampled uniformly on the shape, then
/// perturbed by isotropic Gaussian noise. Half the points (rounded up) get
/// label 0, the rest label 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Shape {
    /// Two discs of radius `radius` whose centers are `separation` apart.
    Blobs {
        #[serde(default = "default_separation")]
        separation: f64,
        #[serde(default = "default_blob_radius")]
        radius: f64,
    },
    /// Two interleaved half circles of radius `radius`.
    Moons {
        #[serde(default = "default_moon_radius")]
        radius: f64,
    },
    /// Two concentric circles.
    Circles {
        #[serde(default = "default_inner")]
        inner: f64,
        #[serde(default = "default_outer")]
        outer: f64,
    },
}

fn default_separation() -> f64 {
    20.0
}
fn default_blob_radius() -> f64 {
    2.0
}
fn default_moon_radius() -> f64 {
    10.0
}
fn default_inner() -> f64 {
    5.0
}
fn default_outer() -> f64 {
    15.0
}

impl Shape {
    pub fn blobs() -> Self {
        Shape::Blobs { separation: default_separation(), radius: default_blob_radius() }
    }

    pub fn moons() -> Self {
        Shape::Moons { radius: default_moon_radius() }
    }

    pub fn circles() -> Self {
        Shape::Circles { inner: default_inner(), outer: default_outer() }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Shape::Blobs { separation, radius } => {
                separation > 0.0 && radius >= 0.0 && separation.is_finite() && radius.is_finite()
            }
            Shape::Moons { radius } => radius > 0.0 && radius.is_finite(),
            Shape::Circles { inner, outer } => inner > 0.0 && outer > inner && outer.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(invalid("shape", format!("bad geometry {self:?}")))
        }
    }

    fn sample<R: Rng + ?Sized>(&self, label: usize, rng: &mut R) -> [f64; 2] {
        match *self {
            Shape::Blobs { separation, radius } => {
                let r = radius * rng.random::<f64>().sqrt();
                let theta = 2.0 * PI * rng.random::<f64>();
                let cx = if label == 0 { 0.0 } else { separation };
                [cx + r * theta.cos(), r * theta.sin()]
            }
            Shape::Moons { radius } => {
                let t = PI * rng.random::<f64>();
                if label == 0 {
                    [radius * t.cos(), radius * t.sin()]
                } else {
                    [radius * (1.0 - t.cos()), radius * (0.5 - t.sin())]
                }
            }
            Shape::Circles { inner, outer } => {
                let t = 2.0 * PI * rng.random::<f64>();
                let r = if label == 0 { inner } else { outer };
                [r * t.cos(), r * t.sin()]
            }
        }
    }
}

/// Labeled two-cluster point cloud, deterministic in `seed`.
pub fn generate_shape_dataset(shape: &Shape, n: usize, noise_scale: f64, seed: u64) -> Result<PointCloud> {
    if n < 4 {
        return Err(invalid("n", format!("{n} points; need at least 4")));
    }
    if !(noise_scale >= 0.0 && noise_scale.is_finite()) {
        return Err(invalid("noise_scale", format!("{noise_scale} must be finite and non-negative")));
    }
    shape.validate()?;
    let mut rng = stream_rng(seed, 0, "shape", &[]);
    let first = n.div_ceil(2);
    let mut points = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let label = usize::from(i >= first);
        let [x, y] = shape.sample(label, &mut rng);
        let nx: f64 = StandardNormal.sample(&mut rng);
        let ny: f64 = StandardNormal.sample(&mut rng);
        points.push(vec![x + noise_scale * nx, y + noise_scale * ny]);
        labels.push(label);
    }
    PointCloud::new(points, Some(labels))
}
