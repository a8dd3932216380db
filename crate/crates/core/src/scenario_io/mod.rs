//! Scenario and result files, SVG output and the command-line front end.

pub mod cli;
pub mod format;
mod results;
mod scenario;
mod svg;

pub use results::{
    load_result, EdgeRecord, ResultFile, RunRecord, COST_REPRODUCTION_TOL, TOOL_VERSION,
};
pub use scenario::{
    load_scenario, save_scenario, BoundsRecord, HeuristicConfig, ObstacleRecord, Scenario,
    ScenarioFile, SCENARIO_VERSION, SEED_OVERRIDE_ENV,
};
pub use svg::{render_svg, RenderOptions};

use crate::error::Result;
use crate::planner::{build_graph, search, GeometricGraph, SearchMode, SearchResult};

/// Everything produced by planning one scenario.
#[derive(Debug, Clone)]
pub struct PlanOutput {
    pub scenario: Scenario,
    pub graph: GeometricGraph,
    pub results: Vec<SearchResult>,
    pub result_file: ResultFile,
}

/// Builds the scenario's graph and runs each requested mode on it.
pub fn plan_scenario(
    file: &ScenarioFile,
    modes: &[SearchMode],
    edge_log: bool,
) -> Result<PlanOutput> {
    let mut scenario = file.build()?;
    scenario.search.record_edges = edge_log;
    let graph = build_graph(
        &scenario.world,
        &scenario.start,
        &scenario.goal,
        &scenario.graph,
    )?;
    let results = modes
        .iter()
        .map(|&m| search(&graph, &scenario.world, m, &scenario.search))
        .collect::<Result<Vec<_>>>()?;
    let runs = results
        .iter()
        .map(|r| RunRecord::from_result(r, edge_log))
        .collect();
    let result_file = ResultFile::new(file.digest(), runs);
    Ok(PlanOutput {
        scenario,
        graph,
        results,
        result_file,
    })
}
