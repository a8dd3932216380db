//! Admissible lower bounds on the reciprocal obstacle-clearance cost of a path.
//!
//! The cost of a path `π : [0, l] → X_valid` is the line integral of the
//! reciprocal clearance, `c(π) = ∫ 1/δ(π(t)) dt`. This crate provides:
//!
//! - [`geometry`]: states, obstacles and exact clearance queries,
//! - [`cost_oracle`]: polyline paths and the adaptive-quadrature cost oracle,
//! - [`heuristics`]: closed-form admissible bounds on that cost,
//! - [`planner`]: a Dijkstra / A* / lazy A* trio over Halton r-disc graphs,
//! - [`scenario_io`]: scenario and result files, SVG rendering and the CLI.

pub mod cost_oracle;
pub mod error;
pub mod geometry;
pub mod heuristics;
pub mod planner;
pub mod quadrature;
pub mod scenario_io;

pub use cost_oracle::{reciprocal_cost, PolylinePath};
pub use error::{Error, Result};
pub use geometry::{Obstacle, State, World};
pub use heuristics::{BoundKind, ClearanceSample, CostBound};
pub use quadrature::QuadratureConfig;
