use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::graph::{GeometricGraph, GOAL, START};
use super::{check_vertex, cost_to_go, edge_cost_exact, edge_cost_heuristic};
use crate::cost_oracle::PolylinePath;
use crate::error::Result;
use crate::geometry::{State, World};
use crate::quadrature::QuadratureConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Uninformed,
    Informed,
    InformedLazy,
}

impl SearchMode {
    pub const ALL: [SearchMode; 3] = [
        SearchMode::Uninformed,
        SearchMode::Informed,
        SearchMode::InformedLazy,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SearchMode::Uninformed => "uninformed",
            SearchMode::Informed => "informed",
            SearchMode::InformedLazy => "informed_lazy",
        }
    }
}

impl std::fmt::Display for SearchMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for SearchMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        SearchMode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown search mode `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SearchConfig {
    pub quadrature: QuadratureConfig,
    /// Interior clearance probes per edge in lazy mode.
    pub k_interior: usize,
    /// Keep a log of every exact edge integration.
    pub record_edges: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchStats {
    pub expansions: usize,
    pub exact_edge_evals: usize,
    pub heuristic_evals: usize,
    pub wall_time_s: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEvaluation {
    pub from: usize,
    pub to: usize,
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub mode: SearchMode,
    /// Vertex sequence from start to goal; `None` when the goal is
    /// unreachable.
    pub vertex_path: Option<Vec<usize>>,
    /// The vertex path as a polyline, when it has positive length.
    pub path: Option<PolylinePath>,
    pub cost: f64,
    pub stats: SearchStats,
    pub edge_log: Vec<EdgeEvaluation>,
}

impl SearchResult {
    pub fn found(&self) -> bool {
        self.vertex_path.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Step {
    /// Expand the vertex with the recorded `g`.
    Expand,
    /// Integrate the edge from `parent`, reached with `g_parent`.
    Verify { parent: usize, g_parent: f64 },
}

#[derive(Debug, Clone, Copy)]
struct Entry {
    f: f64,
    g: f64,
    vertex: usize,
    step: Step,
}

impl Entry {
    fn rank(&self) -> (u8, usize) {
        match self.step {
            Step::Expand => (0, 0),
            Step::Verify { parent, .. } => (1, parent),
        }
    }
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    // Reversed so the max-heap pops the smallest f, then smallest g, then
    // smallest vertex index.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .f
            .total_cmp(&self.f)
            .then_with(|| other.g.total_cmp(&self.g))
            .then_with(|| other.vertex.cmp(&self.vertex))
            .then_with(|| other.rank().cmp(&self.rank()))
    }
}

struct Search<'a> {
    graph: &'a GeometricGraph,
    world: &'a World,
    cfg: &'a SearchConfig,
    mode: SearchMode,
    goal: usize,
    g: Vec<f64>,
    parent: Vec<Option<usize>>,
    h: Vec<Option<f64>>,
    exact: HashMap<(usize, usize), f64>,
    lower: HashMap<(usize, usize), f64>,
    stats: SearchStats,
    log: Vec<EdgeEvaluation>,
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl Search<'_> {
    fn heuristic(&mut self, v: usize) -> Result<f64> {
        if self.mode == SearchMode::Uninformed {
            return Ok(0.0);
        }
        if let Some(h) = self.h[v] {
            return Ok(h);
        }
        self.stats.heuristic_evals += 1;
        let h = cost_to_go(self.graph, v, self.goal)?.value;
        self.h[v] = Some(h);
        Ok(h)
    }

    fn exact_cost(&mut self, a: usize, b: usize) -> Result<f64> {
        let k = key(a, b);
        if let Some(&c) = self.exact.get(&k) {
            return Ok(c);
        }
        self.stats.exact_edge_evals += 1;
        let c = edge_cost_exact(self.world, self.graph, a, b, &self.cfg.quadrature)?;
        if self.cfg.record_edges {
            self.log.push(EdgeEvaluation {
                from: k.0,
                to: k.1,
                cost: c,
            });
        }
        self.exact.insert(k, c);
        Ok(c)
    }

    fn lower_cost(&mut self, a: usize, b: usize) -> Result<f64> {
        let k = key(a, b);
        if let Some(&c) = self.lower.get(&k) {
            return Ok(c);
        }
        self.stats.heuristic_evals += 1;
        let c = edge_cost_heuristic(self.world, self.graph, a, b, self.cfg.k_interior)?.value;
        self.lower.insert(k, c);
        Ok(c)
    }

    fn run(&mut self, start: usize) -> Result<Option<f64>> {
        let mut open = BinaryHeap::new();
        self.g[start] = 0.0;
        let h = self.heuristic(start)?;
        open.push(Entry {
            f: h,
            g: 0.0,
            vertex: start,
            step: Step::Expand,
        });

        while let Some(entry) = open.pop() {
            let v = entry.vertex;
            match entry.step {
                Step::Expand => {
                    if entry.g > self.g[v] {
                        continue;
                    }
                    if v == self.goal {
                        return Ok(Some(entry.g));
                    }
                    self.stats.expansions += 1;
                    let g_v = self.g[v];
                    for e in self.graph.neighbors(v) {
                        let w = e.to;
                        if self.mode == SearchMode::InformedLazy {
                            let g_lb = g_v + self.lower_cost(v, w)?;
                            if g_lb < self.g[w] {
                                let h = self.heuristic(w)?;
                                open.push(Entry {
                                    f: g_lb + h,
                                    g: g_lb,
                                    vertex: w,
                                    step: Step::Verify {
                                        parent: v,
                                        g_parent: g_v,
                                    },
                                });
                            }
                        } else {
                            let g_new = g_v + self.exact_cost(v, w)?;
                            self.relax(&mut open, v, w, g_new)?;
                        }
                    }
                }
                Step::Verify { parent, g_parent } => {
                    // A cheaper route to the parent has its own entries.
                    if self.g[parent] < g_parent || entry.g >= self.g[v] {
                        continue;
                    }
                    let g_new = g_parent + self.exact_cost(parent, v)?;
                    self.relax(&mut open, parent, v, g_new)?;
                }
            }
        }
        Ok(None)
    }

    fn relax(
        &mut self,
        open: &mut BinaryHeap<Entry>,
        from: usize,
        to: usize,
        g_new: f64,
    ) -> Result<()> {
        if g_new < self.g[to] {
            self.g[to] = g_new;
            self.parent[to] = Some(from);
            let h = self.heuristic(to)?;
            open.push(Entry {
                f: g_new + h,
                g: g_new,
                vertex: to,
                step: Step::Expand,
            });
        }
        Ok(())
    }

    fn trace(&self, start: usize) -> Vec<usize> {
        let mut out = vec![self.goal];
        let mut v = self.goal;
        while v != start {
            v = self.parent[v].expect("reached vertices have parents");
            out.push(v);
        }
        out.reverse();
        out
    }
}

/// Searches from [`START`] to [`GOAL`].
pub fn search(
    graph: &GeometricGraph,
    world: &World,
    mode: SearchMode,
    cfg: &SearchConfig,
) -> Result<SearchResult> {
    search_between(graph, world, START, GOAL, mode, cfg)
}

/// Searches between two arbitrary vertices of `graph`.
pub fn search_between(
    graph: &GeometricGraph,
    world: &World,
    start: usize,
    goal: usize,
    mode: SearchMode,
    cfg: &SearchConfig,
) -> Result<SearchResult> {
    check_vertex(graph, start)?;
    check_vertex(graph, goal)?;
    cfg.quadrature.validate()?;
    let timer = Instant::now();
    let n = graph.len();
    let mut s = Search {
        graph,
        world,
        cfg,
        mode,
        goal,
        g: vec![f64::INFINITY; n],
        parent: vec![None; n],
        h: vec![None; n],
        exact: HashMap::new(),
        lower: HashMap::new(),
        stats: SearchStats::default(),
        log: Vec::new(),
    };
    let cost = s.run(start)?;
    let vertex_path = cost.map(|_| s.trace(start));
    let path = match &vertex_path {
        Some(vp) => polyline(graph, vp)?,
        None => None,
    };
    let mut stats = s.stats;
    stats.wall_time_s = timer.elapsed().as_secs_f64();
    Ok(SearchResult {
        mode,
        vertex_path,
        path,
        cost: cost.unwrap_or(f64::INFINITY),
        stats,
        edge_log: s.log,
    })
}

fn polyline(graph: &GeometricGraph, vertex_path: &[usize]) -> Result<Option<PolylinePath>> {
    let mut waypoints: Vec<State> = Vec::with_capacity(vertex_path.len());
    for &v in vertex_path {
        let x = graph.vertex(v);
        if waypoints.last() != Some(x) {
            waypoints.push(x.clone());
        }
    }
    if waypoints.len() < 2 {
        return Ok(None);
    }
    PolylinePath::new(waypoints).map(Some)
}
