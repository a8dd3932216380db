//! States, obstacles and exact clearance queries.
//!
//! The invalid set is the union of the obstacles and is treated as closed, so
//! a state lying on an obstacle boundary has clearance exactly zero and is
//! invalid.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on the Euclidean norm of a half-space normal.
pub const UNIT_NORMAL_TOL: f64 = 1e-12;

/// A point in d-dimensional Euclidean space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct State(Vec<f64>);

impl State {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::invalid("state must have at least one coordinate"));
        }
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::invalid(format!(
                "state coordinate {i} is not finite ({})",
                coords[i]
            )));
        }
        Ok(State(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn distance(&self, other: &State) -> f64 {
        distance(&self.0, &other.0)
    }

    /// `self + s * (other - self)`.
    pub fn lerp(&self, other: &State, s: f64) -> State {
        State(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + s * (b - a))
                .collect(),
        )
    }

    pub(crate) fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: self.dim(),
            });
        }
        Ok(())
    }
}

pub(crate) fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Axis-aligned box with `min < max` in every coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct Aabb {
    min: State,
    max: State,
}

impl Aabb {
    pub fn new(min: State, max: State) -> Result<Self> {
        max.check_dim(min.dim())?;
        if let Some(i) = (0..min.dim()).find(|&i| min.0[i] >= max.0[i]) {
            return Err(Error::invalid(format!(
                "box min corner must be below max corner in every axis (axis {i}: {} >= {})",
                min.0[i], max.0[i]
            )));
        }
        Ok(Aabb { min, max })
    }

    pub fn min(&self) -> &State {
        &self.min
    }

    pub fn max(&self) -> &State {
        &self.max
    }

    pub fn dim(&self) -> usize {
        self.min.dim()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.iter()
            .zip(self.min.coords().iter().zip(self.max.coords()))
            .all(|(v, (lo, hi))| lo <= v && v <= hi)
    }

    /// Distance from `x` to the box; zero inside and on the surface.
    fn distance_from_outside(&self, x: &[f64]) -> f64 {
        x.iter()
            .zip(self.min.coords().iter().zip(self.max.coords()))
            .map(|(v, (lo, hi))| {
                let gap = (lo - v).max(v - hi).max(0.0);
                gap * gap
            })
            .sum::<f64>()
            .sqrt()
    }

    /// Distance from `x` to the complement of the box interior; zero outside.
    fn distance_to_complement(&self, x: &[f64]) -> f64 {
        x.iter()
            .zip(self.min.coords().iter().zip(self.max.coords()))
            .map(|(v, (lo, hi))| (v - lo).min(hi - v))
            .fold(f64::INFINITY, f64::min)
            .max(0.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Obstacle {
    Hypersphere {
        center: State,
        radius: f64,
    },
    AxisAlignedBox(Aabb),
    /// Invalid side is `{x : normal · x <= offset}`.
    HalfSpace {
        normal: Vec<f64>,
        offset: f64,
    },
}

impl Obstacle {
    pub fn hypersphere(center: State, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::invalid(format!(
                "hypersphere radius must be positive and finite, got {radius}"
            )));
        }
        Ok(Obstacle::Hypersphere { center, radius })
    }

    pub fn aabb(min: State, max: State) -> Result<Self> {
        Aabb::new(min, max).map(Obstacle::AxisAlignedBox)
    }

    pub fn half_space(normal: Vec<f64>, offset: f64) -> Result<Self> {
        if normal.is_empty() || normal.iter().any(|c| !c.is_finite()) || !offset.is_finite() {
            return Err(Error::invalid(
                "half-space normal and offset must be finite",
            ));
        }
        let norm = dot(&normal, &normal).sqrt();
        if (norm - 1.0).abs() > UNIT_NORMAL_TOL {
            return Err(Error::invalid(format!(
                "half-space normal must have unit length, got norm {norm}"
            )));
        }
        Ok(Obstacle::HalfSpace { normal, offset })
    }

    pub fn dim(&self) -> usize {
        match self {
            Obstacle::Hypersphere { center, .. } => center.dim(),
            Obstacle::AxisAlignedBox(b) => b.dim(),
            Obstacle::HalfSpace { normal, .. } => normal.len(),
        }
    }

    /// Exact Euclidean distance from `x` to this obstacle (zero inside).
    pub fn distance(&self, x: &[f64]) -> f64 {
        match self {
            Obstacle::Hypersphere { center, radius } => {
                (distance(x, center.coords()) - radius).max(0.0)
            }
            Obstacle::AxisAlignedBox(b) => b.distance_from_outside(x),
            Obstacle::HalfSpace { normal, offset } => (dot(normal, x) - offset).max(0.0),
        }
    }
}

/// The state space: a dimension, a set of obstacles and optional bounds.
///
/// Bounds only restrict sampling unless `bounds_are_obstacles` is set, in
/// which case the complement of the bounding box is also invalid.
#[derive(Debug, Clone, PartialEq)]
pub struct World {
    dimension: usize,
    obstacles: Vec<Obstacle>,
    bounds: Option<Aabb>,
    bounds_are_obstacles: bool,
}

impl World {
    pub fn new(dimension: usize, obstacles: Vec<Obstacle>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::invalid("world dimension must be at least 1"));
        }
        for o in &obstacles {
            if o.dim() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    found: o.dim(),
                });
            }
        }
        Ok(World {
            dimension,
            obstacles,
            bounds: None,
            bounds_are_obstacles: false,
        })
    }

    pub fn with_bounds(mut self, bounds: Aabb) -> Result<Self> {
        if bounds.dim() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: bounds.dim(),
            });
        }
        self.bounds = Some(bounds);
        Ok(self)
    }

    pub fn with_bounds_as_obstacles(mut self, enabled: bool) -> Self {
        self.bounds_are_obstacles = enabled;
        self
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn obstacles(&self) -> &[Obstacle] {
        &self.obstacles
    }

    pub fn bounds(&self) -> Option<&Aabb> {
        self.bounds.as_ref()
    }

    pub fn bounds_are_obstacles(&self) -> bool {
        self.bounds_are_obstacles
    }

    /// Minimum distance from `x` to the invalid set, `+inf` if it is empty.
    pub fn clearance(&self, x: &State) -> Result<f64> {
        x.check_dim(self.dimension)?;
        Ok(self.clearance_at(x.coords()))
    }

    pub fn is_valid(&self, x: &State) -> Result<bool> {
        Ok(self.clearance(x)? > 0.0)
    }

    /// Clearance for raw coordinates; the caller guarantees the dimension.
    pub(crate) fn clearance_at(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dimension);
        let mut d = self
            .obstacles
            .iter()
            .map(|o| o.distance(x))
            .fold(f64::INFINITY, f64::min);
        if self.bounds_are_obstacles {
            if let Some(b) = &self.bounds {
                d = d.min(b.distance_to_complement(x));
            }
        }
        d
    }
}
