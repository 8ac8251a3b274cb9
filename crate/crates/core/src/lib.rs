//! Weight-differentially-private minimum spanning trees.
//!
//! * [`graph`]: graphs, generators, file formats and exact MST baselines.
//! * [`dp`]: Laplace/Gaussian noise, the exponential mechanism, budget
//!   composition and an empirical privacy audit.
//! * [`pamst`]: the private approximate MST and its per-step trace.
//! * [`bounds`]: closed-form error bounds and the density crossover.
//! * [`clustering`]: DBMSTClu on (possibly private) spanning trees.
//! * [`experiment`]: seeded Monte-Carlo harness and the clustering pipeline.
//!
//! ```
//! use privmst::graph::{erdos_renyi, approximation_error};
//! use privmst::pamst::{pamst, UtilityConfig};
//! use rand::SeedableRng;
//!
//! let g = erdos_renyi(30, 0.4, 0.0, 10.0, 7).unwrap();
//! let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
//! let (tree, _trace) = pamst(&g, 1.0, UtilityConfig::normalized(&g), None, &mut rng).unwrap();
//! assert!(approximation_error(&g, &tree).unwrap() >= 0.0);
//! ```

// `!(x > 0.0)` is how NaN gets rejected alongside out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod clustering;
pub mod dp;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod pamst;

pub use clustering::{ClusterPartition, WeightedTree};
pub use dp::{BudgetLedger, PrivacyParams};
pub use error::{Error, Result};
pub use experiment::{ErrorTableRow, ExperimentConfig};
pub use graph::{Graph, PointCloud, TreeTopology};
pub use pamst::PamstTrace;
