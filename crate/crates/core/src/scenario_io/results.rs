use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::planner::{SearchMode, SearchResult, SearchStats};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Relative tolerance for reproducing a stored cost.
pub const COST_REPRODUCTION_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub from: usize,
    pub to: usize,
    /// `null` when the edge crosses the invalid set.
    pub cost: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunRecord {
    pub mode: SearchMode,
    pub found: bool,
    /// `null` when no path exists.
    pub cost: Option<f64>,
    pub vertex_path: Vec<usize>,
    pub waypoints: Vec<Vec<f64>>,
    pub stats: SearchStats,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_log: Option<Vec<EdgeRecord>>,
}

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

impl RunRecord {
    pub fn from_result(r: &SearchResult, with_edge_log: bool) -> Self {
        RunRecord {
            mode: r.mode,
            found: r.found(),
            cost: finite(r.cost),
            vertex_path: r.vertex_path.clone().unwrap_or_default(),
            waypoints: r
                .path
                .as_ref()
                .map(|p| p.waypoints().iter().map(|w| w.coords().to_vec()).collect())
                .unwrap_or_default(),
            stats: r.stats,
            edge_log: with_edge_log.then(|| {
                r.edge_log
                    .iter()
                    .map(|e| EdgeRecord {
                        from: e.from,
                        to: e.to,
                        cost: finite(e.cost),
                    })
                    .collect()
            }),
        }
    }

    pub fn cost_or_inf(&self) -> f64 {
        self.cost.unwrap_or(f64::INFINITY)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultFile {
    pub tool_version: String,
    pub scenario_digest: String,
    pub runs: Vec<RunRecord>,
}

impl ResultFile {
    pub fn new(scenario_digest: String, runs: Vec<RunRecord>) -> Self {
        ResultFile {
            tool_version: TOOL_VERSION.to_string(),
            scenario_digest,
            runs,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("result serializes");
        s.push('\n');
        s
    }

    /// Copy with every wall-time field zeroed, for run-to-run comparisons.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        for run in &mut r.runs {
            run.stats.wall_time_s = 0.0;
        }
        r
    }

    /// Checks that this file belongs to the scenario with `digest` and that
    /// `fresh` reproduces every stored cost.
    pub fn verify_against(&self, name: &str, digest: &str, fresh: &[RunRecord]) -> Result<()> {
        if self.scenario_digest != digest {
            return Err(Error::DigestMismatch {
                name: name.to_string(),
                expected: digest.to_string(),
                found: self.scenario_digest.clone(),
            });
        }
        for stored in &self.runs {
            let Some(now) = fresh.iter().find(|r| r.mode == stored.mode) else {
                continue;
            };
            let (a, b) = (stored.cost_or_inf(), now.cost_or_inf());
            let same = if a.is_finite() && b.is_finite() {
                (a - b).abs() <= COST_REPRODUCTION_TOL * a.abs().max(b.abs()).max(1.0)
            } else {
                a == b
            };
            if !same {
                return Err(Error::invalid(format!(
                    "{name}: {} cost {a} does not reproduce (got {b})",
                    stored.mode
                )));
            }
        }
        Ok(())
    }
}

pub fn load_result(path: &Path) -> Result<ResultFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}
