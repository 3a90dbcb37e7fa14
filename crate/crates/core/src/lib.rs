//! Simulator and analytics for dense wireless sensor network coverage.
//!
//! Nodes are placed like stones on a Go board: a lattice of candidate
//! intersections is laid over the sensor field, a weighted catalog of
//! opening heuristics scores the free intersections, and a seeded random
//! selection keeps occupying them until the closed-form connectivity
//! probability clears a stopping rule. Alongside the placement loop, the
//! crate carries the closed-form density/coverage model itself and the
//! Monte Carlo estimators that validate it.
//!
//! - [`field`]: field geometry, the board lattice, deployments, and
//!   neighbor/isolation queries under planar or toroidal metrics
//! - [`analytics`]: density, connectivity probability, the per-point
//!   coverage distributions and their Poisson limit, and the stopping-N
//!   solver
//! - [`heuristics`]: the scorer catalog and weighted random selection
//! - [`placement`]: the placement loop and the uniform-random baseline
//! - [`montecarlo`]: seeded empirical estimators and the
//!   heuristic-vs-baseline comparison

pub mod analytics;
pub mod field;
pub mod heuristics;
pub mod montecarlo;
pub mod placement;

pub use analytics::{AnalyticsError, CoverageModel, DensityParams, StoppingRule};
pub use field::{Deployment, FieldError, FieldSpec, GridBoard, GridPoint, Metric};
pub use heuristics::{Heuristic, HeuristicSet, HeuristicsError, Scorer};
pub use montecarlo::{McConfig, McError, McReport, StrategyComparison};
pub use placement::{PlacementConfig, PlacementError, PlacementResult};
