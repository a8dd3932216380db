use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::geometry::{Aabb, Obstacle, State, World};
use crate::planner::{GraphParams, SearchConfig, SearchMode};
use crate::quadrature::QuadratureConfig;

pub const SCENARIO_VERSION: u32 = 1;

/// Environment variable that replaces every scenario's graph seed.
pub const SEED_OVERRIDE_ENV: &str = "CLEARBOUND_SEED_OVERRIDE";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsRecord {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ObstacleRecord {
    Hypersphere { center: Vec<f64>, radius: f64 },
    Box { min: Vec<f64>, max: Vec<f64> },
    HalfSpace { normal: Vec<f64>, offset: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeuristicConfig {
    pub mode: SearchMode,
    pub k_interior: usize,
}

impl Default for HeuristicConfig {
    fn default() -> Self {
        HeuristicConfig {
            mode: SearchMode::InformedLazy,
            k_interior: 0,
        }
    }
}

/// On-disk scenario: a world, a start/goal query and planner settings.
///
/// The canonical form is pretty-printed JSON with every field present, in
/// declaration order, followed by a newline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub version: u32,
    pub dimension: usize,
    pub bounds: Option<BoundsRecord>,
    #[serde(default)]
    pub bounds_are_obstacles: bool,
    pub obstacles: Vec<ObstacleRecord>,
    pub start: Vec<f64>,
    pub goal: Vec<f64>,
    pub graph: GraphParams,
    #[serde(default)]
    pub quadrature: QuadratureConfig,
    #[serde(default)]
    pub heuristic: HeuristicConfig,
}

/// A validated scenario ready for planning.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub world: World,
    pub start: State,
    pub goal: State,
    pub graph: GraphParams,
    pub mode: SearchMode,
    pub search: SearchConfig,
}

fn state(field: &str, coords: &[f64], dim: usize) -> Result<State> {
    if coords.len() != dim {
        return Err(Error::semantic(
            field,
            format!("expected {dim} coordinates, found {}", coords.len()),
        ));
    }
    State::new(coords.to_vec()).map_err(|e| Error::semantic(field, e.to_string()))
}

fn in_field<T>(field: impl Into<String>, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::InvalidInput(m) => Error::semantic(field, m),
        Error::DimensionMismatch { expected, found } => Error::semantic(
            field,
            format!("expected dimension {expected}, found {found}"),
        ),
        other => other,
    })
}

impl ScenarioFile {
    /// Checks every geometric and planner invariant and builds the world.
    pub fn build(&self) -> Result<Scenario> {
        if self.version != SCENARIO_VERSION {
            return Err(Error::semantic(
                "version",
                format!(
                    "unsupported version {} (expected {SCENARIO_VERSION})",
                    self.version
                ),
            ));
        }
        let dim = self.dimension;
        if dim == 0 {
            return Err(Error::semantic("dimension", "must be at least 1"));
        }

        let mut obstacles = Vec::with_capacity(self.obstacles.len());
        for (i, rec) in self.obstacles.iter().enumerate() {
            let field = format!("obstacles[{i}]");
            let o = match rec {
                ObstacleRecord::Hypersphere { center, radius } => {
                    let c = state(&format!("{field}.center"), center, dim)?;
                    in_field(format!("{field}.radius"), Obstacle::hypersphere(c, *radius))?
                }
                ObstacleRecord::Box { min, max } => {
                    let lo = state(&format!("{field}.min"), min, dim)?;
                    let hi = state(&format!("{field}.max"), max, dim)?;
                    in_field(field.clone(), Obstacle::aabb(lo, hi))?
                }
                ObstacleRecord::HalfSpace { normal, offset } => {
                    if normal.len() != dim {
                        return Err(Error::semantic(
                            format!("{field}.normal"),
                            format!("expected {dim} coordinates, found {}", normal.len()),
                        ));
                    }
                    in_field(
                        format!("{field}.normal"),
                        Obstacle::half_space(normal.clone(), *offset),
                    )?
                }
            };
            obstacles.push(o);
        }
        let mut world = in_field("obstacles", World::new(dim, obstacles))?;
        if let Some(b) = &self.bounds {
            let lo = state("bounds.min", &b.min, dim)?;
            let hi = state("bounds.max", &b.max, dim)?;
            let aabb = in_field("bounds", Aabb::new(lo, hi))?;
            world = in_field("bounds", world.with_bounds(aabb))?;
        } else if self.bounds_are_obstacles {
            return Err(Error::semantic(
                "bounds_are_obstacles",
                "requires bounds to be present",
            ));
        }
        world = world.with_bounds_as_obstacles(self.bounds_are_obstacles);

        let start = state("start", &self.start, dim)?;
        if !world.is_valid(&start)? {
            return Err(Error::semantic("start", "lies in the invalid set"));
        }
        let goal = state("goal", &self.goal, dim)?;
        if !world.is_valid(&goal)? {
            return Err(Error::semantic("goal", "lies in the invalid set"));
        }

        if !(self.graph.radius > 0.0 && self.graph.radius.is_finite()) {
            return Err(Error::semantic(
                "graph.radius",
                "must be positive and finite",
            ));
        }
        if self.graph.n_vertices > 0 && self.bounds.is_none() {
            return Err(Error::semantic(
                "bounds",
                "required when graph.n_vertices > 0",
            ));
        }
        in_field("quadrature", self.quadrature.validate())?;

        Ok(Scenario {
            world,
            start,
            goal,
            graph: self.graph,
            mode: self.heuristic.mode,
            search: SearchConfig {
                quadrature: self.quadrature,
                k_interior: self.heuristic.k_interior,
                record_edges: false,
            },
        })
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_canonical_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scenario serializes");
        s.push('\n');
        s
    }

    /// SHA-256 of the canonical form, hex encoded.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_canonical_string().as_bytes()))
    }

    /// Parses and validates scenario text; `origin` is used in diagnostics.
    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let file: ScenarioFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            path: origin.to_path_buf(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        file.build()?;
        Ok(file)
    }

    /// Replaces the graph seed with the value of [`SEED_OVERRIDE_ENV`], if set.
    pub fn apply_seed_override(&mut self) -> Result<()> {
        if let Ok(raw) = std::env::var(SEED_OVERRIDE_ENV) {
            self.graph.seed = raw.trim().parse().map_err(|_| {
                Error::invalid(format!(
                    "{SEED_OVERRIDE_ENV}={raw:?} is not an unsigned integer"
                ))
            })?;
        }
        Ok(())
    }
}

/// Reads and fully validates a scenario file.
pub fn load_scenario(path: &Path) -> Result<ScenarioFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    ScenarioFile::parse(&text, path)
}

pub fn save_scenario(file: &ScenarioFile, path: &Path) -> Result<()> {
    std::fs::write(path, file.to_canonical_string()).map_err(|e| Error::io(path, e))
}
