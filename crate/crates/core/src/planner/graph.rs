use serde::{Deserialize, Serialize};

use super::halton::Halton;
use crate::error::{Error, Result};
use crate::geometry::{State, World};

/// Index of the start vertex in every [`GeometricGraph`].
pub const START: usize = 0;
/// Index of the goal vertex in every [`GeometricGraph`].
pub const GOAL: usize = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphParams {
    /// Number of Halton candidates drawn; invalid ones are discarded.
    pub n_vertices: usize,
    /// Connection radius of the r-disc graph.
    pub radius: f64,
    /// Halton sequence offset.
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Edge {
    pub to: usize,
    pub length: f64,
}

/// Undirected r-disc graph over valid states with cached clearances.
///
/// Vertex 0 is the start and vertex 1 the goal; adjacency lists are sorted by
/// neighbour index.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeometricGraph {
    params: GraphParams,
    vertices: Vec<State>,
    clearances: Vec<f64>,
    adjacency: Vec<Vec<Edge>>,
}

impl GeometricGraph {
    pub fn params(&self) -> &GraphParams {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> &State {
        &self.vertices[i]
    }

    pub fn vertices(&self) -> &[State] {
        &self.vertices
    }

    pub fn clearance(&self, i: usize) -> f64 {
        self.clearances[i]
    }

    pub fn neighbors(&self, i: usize) -> &[Edge] {
        &self.adjacency[i]
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Each undirected edge once, as `(i, j, length)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(i, adj)| {
            adj.iter()
                .filter(move |e| e.to > i)
                .map(move |e| (i, e.to, e.length))
        })
    }
}

/// Builds the start/goal plus Halton-sample r-disc graph.
///
/// Samples are drawn inside the world bounds (required when
/// `params.n_vertices > 0`) and kept only if valid.
pub fn build_graph(
    world: &World,
    start: &State,
    goal: &State,
    params: &GraphParams,
) -> Result<GeometricGraph> {
    if !(params.radius > 0.0 && params.radius.is_finite()) {
        return Err(Error::semantic(
            "radius",
            format!("must be positive and finite, got {}", params.radius),
        ));
    }
    let d_start = world.clearance(start)?;
    if d_start <= 0.0 {
        return Err(Error::semantic("start", "lies in the invalid set"));
    }
    let d_goal = world.clearance(goal)?;
    if d_goal <= 0.0 {
        return Err(Error::semantic("goal", "lies in the invalid set"));
    }

    let mut vertices = vec![start.clone(), goal.clone()];
    let mut clearances = vec![d_start, d_goal];
    if params.n_vertices > 0 {
        let bounds = world
            .bounds()
            .ok_or_else(|| Error::semantic("bounds", "required to sample graph vertices"))?;
        let lo = bounds.min().coords();
        let hi = bounds.max().coords();
        for unit in Halton::new(world.dimension(), params.seed).take(params.n_vertices) {
            let coords: Vec<f64> = unit
                .iter()
                .enumerate()
                .map(|(i, u)| lo[i] + u * (hi[i] - lo[i]))
                .collect();
            let x = State::new(coords)?;
            if x == *start || x == *goal {
                continue;
            }
            let d = world.clearance(&x)?;
            if d > 0.0 {
                vertices.push(x);
                clearances.push(d);
            }
        }
    }

    let n = vertices.len();
    let mut adjacency = vec![Vec::new(); n];
    for i in 0..n {
        for j in (i + 1)..n {
            let length = vertices[i].distance(&vertices[j]);
            if length <= params.radius {
                adjacency[i].push(Edge { to: j, length });
                adjacency[j].push(Edge { to: i, length });
            }
        }
    }

    Ok(GeometricGraph {
        params: *params,
        vertices,
        clearances,
        adjacency,
    })
}
