//! Graph search over sampled r-disc graphs, using the clearance bounds as
//! cost-to-go estimates and as lazy edge-cost estimates.
//!
//! Three modes share one search loop:
//!
//! - `uninformed`: Dijkstra with exact edge costs, the optimal reference;
//! - `informed`: A* with [`cost_to_go`] as the heuristic;
//! - `informed_lazy`: A* whose queue orders candidate edges by
//!   [`edge_cost_heuristic`] and integrates an edge only when it is popped.
//!
//! The heuristic is admissible but not known to be consistent, so vertices
//! may be re-expanded when a cheaper route is found.

pub mod graph;
pub mod halton;
mod search;

pub use graph::{build_graph, Edge, GeometricGraph, GraphParams, GOAL, START};
pub use search::{
    search, search_between, EdgeEvaluation, SearchConfig, SearchMode, SearchResult, SearchStats,
};

use crate::cost_oracle::segment_cost;
use crate::error::{Error, Result};
use crate::geometry::World;
use crate::heuristics::{
    bound_endpoint_chain, bound_two_endpoint, BoundKind, ClearanceSample, Consistency, CostBound,
};
use crate::quadrature::QuadratureConfig;

fn check_vertex(graph: &GeometricGraph, v: usize) -> Result<()> {
    if v >= graph.len() {
        return Err(Error::invalid(format!(
            "vertex {v} out of range (graph has {} vertices)",
            graph.len()
        )));
    }
    Ok(())
}

/// Exact reciprocal clearance cost of the straight edge between two vertices.
///
/// The segment is always integrated from the lower to the higher index so
/// both directions report bit-identical costs.
pub fn edge_cost_exact(
    world: &World,
    graph: &GeometricGraph,
    a: usize,
    b: usize,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    check_vertex(graph, a)?;
    check_vertex(graph, b)?;
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    segment_cost(world, graph.vertex(lo), graph.vertex(hi), cfg)
}

/// Lower bound on the edge cost from the cached end clearances plus
/// `k_interior` clearance probes at evenly spaced interior points.
pub fn edge_cost_heuristic(
    world: &World,
    graph: &GeometricGraph,
    a: usize,
    b: usize,
    k_interior: usize,
) -> Result<CostBound> {
    check_vertex(graph, a)?;
    check_vertex(graph, b)?;
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let (va, vb) = (graph.vertex(lo), graph.vertex(hi));
    let len = va.distance(vb);
    if len == 0.0 {
        return Ok(CostBound {
            value: 0.0,
            kind: BoundKind::EndpointChain,
        });
    }
    let pieces = (k_interior + 1) as f64;
    let mut samples = Vec::with_capacity(k_interior + 2);
    samples.push(ClearanceSample {
        t: 0.0,
        d: graph.clearance(lo),
    });
    for j in 1..=k_interior {
        let s = j as f64 / pieces;
        let d = world.clearance(&va.lerp(vb, s))?;
        if d <= 0.0 {
            // The straight edge passes through an obstacle.
            return Ok(CostBound {
                value: f64::INFINITY,
                kind: BoundKind::EndpointChain,
            });
        }
        samples.push(ClearanceSample { t: s * len, d });
    }
    samples.push(ClearanceSample {
        t: len,
        d: graph.clearance(hi),
    });
    bound_endpoint_chain(&samples, len, Consistency::Permissive)
}

/// Admissible cost-to-go from `v` to `goal`, using the Euclidean distance as
/// the arc-length lower bound.
pub fn cost_to_go(graph: &GeometricGraph, v: usize, goal: usize) -> Result<CostBound> {
    check_vertex(graph, v)?;
    check_vertex(graph, goal)?;
    let lhat = graph.vertex(v).distance(graph.vertex(goal));
    bound_two_endpoint(graph.clearance(v), graph.clearance(goal), lhat)
}
