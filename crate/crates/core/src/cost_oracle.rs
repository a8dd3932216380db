//! Polyline paths and the reciprocal clearance cost `∫ 1/δ(π(t)) dt`.
//!
//! The cost is integrated segment by segment with adaptive Simpson
//! quadrature. The integrand has kinks at every waypoint, so each segment is
//! a fresh integration; kinks inside a segment (where the nearest obstacle
//! changes) are left to adaptive refinement.

use crate::error::{Error, Result};
use crate::geometry::{State, World};
use crate::quadrature::{adaptive_simpson, QuadratureConfig};

/// Slack allowed on arc-length parameters outside `[0, l]`.
pub const ARC_SLACK: f64 = 1e-12;

/// An arc-length parameterized polyline with at least one positive-length
/// segment and no repeated consecutive waypoints.
#[derive(Debug, Clone, PartialEq)]
pub struct PolylinePath {
    waypoints: Vec<State>,
    cumulative: Vec<f64>,
}

impl PolylinePath {
    pub fn new(waypoints: Vec<State>) -> Result<Self> {
        if waypoints.len() < 2 {
            return Err(Error::invalid("a path needs at least two waypoints"));
        }
        let dim = waypoints[0].dim();
        let mut cumulative = Vec::with_capacity(waypoints.len());
        cumulative.push(0.0);
        for (i, pair) in waypoints.windows(2).enumerate() {
            pair[1].check_dim(dim)?;
            let len = pair[0].distance(&pair[1]);
            if len <= 0.0 {
                return Err(Error::invalid(format!(
                    "waypoints {i} and {} coincide",
                    i + 1
                )));
            }
            cumulative.push(cumulative[i] + len);
        }
        Ok(PolylinePath {
            waypoints,
            cumulative,
        })
    }

    pub fn waypoints(&self) -> &[State] {
        &self.waypoints
    }

    pub fn dim(&self) -> usize {
        self.waypoints[0].dim()
    }

    /// Total arc length `l`.
    pub fn length(&self) -> f64 {
        *self.cumulative.last().unwrap()
    }

    /// Arc-length position of every waypoint.
    pub fn cumulative_lengths(&self) -> &[f64] {
        &self.cumulative
    }

    fn clamp_param(&self, t: f64) -> Result<f64> {
        let l = self.length();
        if !t.is_finite() || t < -ARC_SLACK || t > l + ARC_SLACK {
            return Err(Error::invalid(format!(
                "arc-length parameter {t} outside [0, {l}]"
            )));
        }
        Ok(t.clamp(0.0, l))
    }

    /// The state at arc length `t` along the path.
    pub fn state_at(&self, t: f64) -> Result<State> {
        let t = self.clamp_param(t)?;
        if t == self.length() {
            return Ok(self.waypoints.last().unwrap().clone());
        }
        // Segment k spans [cumulative[k], cumulative[k + 1]).
        let k = self.cumulative.partition_point(|&c| c <= t) - 1;
        let seg = self.cumulative[k + 1] - self.cumulative[k];
        let s = (t - self.cumulative[k]) / seg;
        Ok(self.waypoints[k].lerp(&self.waypoints[k + 1], s))
    }

    /// Splits the path at interior arc length `t ∈ (0, l)`.
    pub fn split_at(&self, t: f64) -> Result<(PolylinePath, PolylinePath)> {
        let l = self.length();
        if !(t > 0.0 && t < l) {
            return Err(Error::invalid(format!(
                "split point {t} not inside (0, {l})"
            )));
        }
        let k = self.cumulative.partition_point(|&c| c < t);
        let mut head = self.waypoints[..k].to_vec();
        let mut tail = Vec::with_capacity(self.waypoints.len() - k + 1);
        if self.cumulative[k] == t {
            head.push(self.waypoints[k].clone());
        } else {
            let p = self.state_at(t)?;
            head.push(p.clone());
            tail.push(p);
        }
        tail.extend_from_slice(&self.waypoints[k..]);
        Ok((PolylinePath::new(head)?, PolylinePath::new(tail)?))
    }

    pub fn reversed(&self) -> PolylinePath {
        let mut waypoints = self.waypoints.clone();
        waypoints.reverse();
        PolylinePath::new(waypoints).expect("reversal preserves validity")
    }
}

/// Reciprocal clearance cost of the straight segment `a → b`.
///
/// Returns `+inf` if the quadrature probes a state with zero clearance.
pub fn segment_cost(world: &World, a: &State, b: &State, cfg: &QuadratureConfig) -> Result<f64> {
    a.check_dim(world.dimension())?;
    b.check_dim(world.dimension())?;
    let len = a.distance(b);
    if len == 0.0 {
        return Ok(0.0);
    }
    if world.obstacles().is_empty() && !world.bounds_are_obstacles() {
        return Ok(0.0);
    }
    let (pa, pb) = (a.coords(), b.coords());
    let mut x = vec![0.0; pa.len()];
    let integrand = |s: f64| {
        let u = s / len;
        for (i, xi) in x.iter_mut().enumerate() {
            *xi = pa[i] + u * (pb[i] - pa[i]);
        }
        1.0 / world.clearance_at(&x)
    };
    Ok(adaptive_simpson(integrand, 0.0, len, cfg)?.value)
}

/// The reciprocal clearance cost `c(π) = ∫₀ˡ 1/δ(π(t)) dt`.
///
/// Every waypoint must be valid in `world`. Zero clearance probed strictly
/// inside a segment makes the cost `+inf`.
pub fn reciprocal_cost(path: &PolylinePath, world: &World, cfg: &QuadratureConfig) -> Result<f64> {
    cfg.validate()?;
    if path.dim() != world.dimension() {
        return Err(Error::DimensionMismatch {
            expected: world.dimension(),
            found: path.dim(),
        });
    }
    for (i, w) in path.waypoints().iter().enumerate() {
        if !world.is_valid(w)? {
            return Err(Error::invalid(format!(
                "waypoint {i} lies in the invalid set"
            )));
        }
    }
    let mut total = 0.0;
    for pair in path.waypoints().windows(2) {
        total += segment_cost(world, &pair[0], &pair[1], cfg)?;
        if total.is_infinite() {
            break;
        }
    }
    Ok(total)
}
