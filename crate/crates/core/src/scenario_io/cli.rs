//! `clearbound` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 input error, 3 numerical
//! convergence error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use super::format::{shortest, significant};
use super::{load_result, load_scenario, plan_scenario, render_svg, RenderOptions, RunRecord};
use crate::error::{Error, Result};
use crate::heuristics::{
    bound_endpoint_chain, bound_multi_sample, bound_one_endpoint, bound_single_sample,
    bound_two_endpoint, ClearanceSample, Consistency, CostBound,
};
use crate::planner::SearchMode;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;

pub const BENCH_HEADER: &str =
    "scenario,mode,cost,expansions,exact_edge_evals,heuristic_evals,wall_time_s";

#[derive(Debug, Parser)]
#[command(
    name = "clearbound",
    version,
    about = "Admissible reciprocal-clearance heuristics and an informed graph planner"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Plan on a scenario and write a result file.
    Plan {
        #[arg(long)]
        scenario: PathBuf,
        /// uninformed, informed, informed_lazy or all; defaults to the
        /// scenario's heuristic mode.
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Include every exact edge integration in the result file.
        #[arg(long)]
        edge_log: bool,
        /// Draw clearance discs around path waypoints in the SVG.
        #[arg(long)]
        clearance_discs: bool,
    },
    /// Evaluate one bound and print it with 12 significant digits.
    #[command(allow_negative_numbers = true)]
    Bound {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        d1: Option<f64>,
        #[arg(long)]
        d2: Option<f64>,
        #[arg(long)]
        lhat: Option<f64>,
        #[arg(long)]
        t1: Option<f64>,
        /// Exact arc length of the path.
        #[arg(long)]
        l: Option<f64>,
        /// Clearance samples as `t:d` pairs separated by commas.
        #[arg(long)]
        samples: Option<String>,
        /// Reject samples that no path could produce.
        #[arg(long)]
        strict: bool,
    },
    /// Check a scenario's schema and invariants.
    Validate {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Run all modes on every scenario in a directory and write a CSV table.
    Bench {
        #[arg(long)]
        scenario_dir: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Directory of `<name>.result.json` files to verify against.
        #[arg(long)]
        baseline_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    OneEndpoint,
    TwoEndpoint,
    SingleSample,
    MultiSample,
    Chain,
}

enum Failure {
    Usage(String),
    Input(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

fn need(v: Option<f64>, flag: &str) -> Result<f64, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--{flag} is required for this bound kind")))
}

fn parse_samples(raw: &str) -> Result<Vec<ClearanceSample>, Failure> {
    raw.split(',')
        .map(|pair| {
            let (t, d) = pair
                .split_once(':')
                .ok_or_else(|| Failure::Usage(format!("sample `{pair}` is not of the form t:d")))?;
            let t: f64 = t
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("bad sample position `{t}`")))?;
            let d: f64 = d
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("bad sample clearance `{d}`")))?;
            Ok(ClearanceSample::new(t, d)?)
        })
        .collect()
}

fn parse_modes(raw: Option<&str>, default: SearchMode) -> Result<Vec<SearchMode>, Failure> {
    match raw {
        None => Ok(vec![default]),
        Some("all") => Ok(SearchMode::ALL.to_vec()),
        Some(m) => m.parse().map(|m| vec![m]).map_err(Failure::Usage),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn load_effective(path: &Path) -> Result<super::ScenarioFile> {
    let mut file = load_scenario(path)?;
    file.apply_seed_override()?;
    Ok(file)
}

fn bench_rows(name: &str, runs: &[RunRecord]) -> Vec<String> {
    let quote = |s: &str| {
        if s.contains([',', '"', '\n']) {
            format!("\"{}\"", s.replace('"', "\"\""))
        } else {
            s.to_string()
        }
    };
    runs.iter()
        .map(|r| {
            format!(
                "{},{},{},{},{},{},{}",
                quote(name),
                r.mode,
                shortest(r.cost_or_inf()),
                r.stats.expansions,
                r.stats.exact_edge_evals,
                r.stats.heuristic_evals,
                shortest(r.stats.wall_time_s)
            )
        })
        .collect()
}

fn bench(scenario_dir: &Path, out_path: &Path, baseline_dir: Option<&Path>) -> Result<usize> {
    let mut scenarios: Vec<PathBuf> = std::fs::read_dir(scenario_dir)
        .map_err(|e| Error::io(scenario_dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    scenarios.sort();

    let tables: Vec<Result<Vec<String>>> = scenarios
        .par_iter()
        .map(|path| {
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let file = load_effective(path)?;
            let output = plan_scenario(&file, &SearchMode::ALL, false)?;
            if let Some(dir) = baseline_dir {
                let baseline = dir.join(format!("{name}.result.json"));
                if baseline.exists() {
                    load_result(&baseline)?.verify_against(
                        &name,
                        &output.result_file.scenario_digest,
                        &output.result_file.runs,
                    )?;
                }
            }
            Ok(bench_rows(&name, &output.result_file.runs))
        })
        .collect();

    let mut csv = String::from(BENCH_HEADER);
    csv.push('\n');
    for rows in tables {
        for row in rows? {
            csv.push_str(&row);
            csv.push('\n');
        }
    }
    write_file(out_path, &csv)?;
    Ok(scenarios.len())
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Bound {
            kind,
            d1,
            d2,
            lhat,
            t1,
            l,
            samples,
            strict,
        } => {
            let consistency = if strict {
                Consistency::Strict
            } else {
                Consistency::Permissive
            };
            let bound: CostBound = match kind {
                KindArg::OneEndpoint => bound_one_endpoint(need(d1, "d1")?, need(lhat, "lhat")?)?,
                KindArg::TwoEndpoint => {
                    bound_two_endpoint(need(d1, "d1")?, need(d2, "d2")?, need(lhat, "lhat")?)?
                }
                KindArg::SingleSample => {
                    bound_single_sample(need(d1, "d1")?, need(t1, "t1")?, need(l, "l")?)?
                }
                KindArg::MultiSample | KindArg::Chain => {
                    let raw = samples.ok_or_else(|| {
                        Failure::Usage("--samples is required for this bound kind".into())
                    })?;
                    let samples = parse_samples(&raw)?;
                    let l = need(l, "l")?;
                    if matches!(kind, KindArg::Chain) {
                        bound_endpoint_chain(&samples, l, consistency)?
                    } else {
                        bound_multi_sample(&samples, l, consistency)?
                    }
                }
            };
            let _ = writeln!(out, "{}", significant(bound.value, 12));
        }
        Command::Validate { scenario } => {
            let file = load_scenario(&scenario)?;
            let _ = writeln!(out, "ok {} {}", scenario.display(), file.digest());
        }
        Command::Plan {
            scenario,
            mode,
            out: out_path,
            svg,
            edge_log,
            clearance_discs,
        } => {
            let file = load_effective(&scenario)?;
            let modes = parse_modes(mode.as_deref(), file.heuristic.mode)?;
            let output = plan_scenario(&file, &modes, edge_log)?;
            write_file(&out_path, &output.result_file.to_json())?;
            for r in &output.results {
                let _ = writeln!(
                    out,
                    "{}: cost {} ({} expansions, {} exact edge evaluations)",
                    r.mode,
                    significant(r.cost, 12),
                    r.stats.expansions,
                    r.stats.exact_edge_evals
                );
            }
            if let Some(svg_path) = svg {
                let path = output.results.first().and_then(|r| r.path.as_ref());
                let options = RenderOptions { clearance_discs };
                match render_svg(&output.scenario.world, Some(&output.graph), path, &options) {
                    Ok(doc) => write_file(&svg_path, &doc)?,
                    // Not fatal for planning.
                    Err(e @ Error::UnsupportedRender(_)) => {
                        let _ = writeln!(err, "warning: {e}");
                    }
                    Err(e) => return Err(e.into()),
                }
            }
        }
        Command::Bench {
            scenario_dir,
            out: out_path,
            baseline_dir,
        } => {
            let n = bench(&scenario_dir, &out_path, baseline_dir.as_deref())?;
            let _ = writeln!(out, "benchmarked {n} scenarios into {}", out_path.display());
        }
    }
    Ok(())
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Input(e)) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("clearbound").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn two_endpoint_bound_prints_ln2() {
        let (code, out, _) = run_capture(&[
            "bound",
            "--kind",
            "two-endpoint",
            "--d1",
            "1",
            "--d2",
            "2",
            "--lhat",
            "1",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out, "0.693147180560\n");
    }

    #[test]
    fn every_bound_kind_is_reachable() {
        let cases: [(&[&str], &str); 4] = [
            (
                &["--kind", "one-endpoint", "--d1", "1", "--lhat", "2"],
                "1.09861228867\n",
            ),
            (
                &[
                    "--kind",
                    "single-sample",
                    "--d1",
                    "1",
                    "--t1",
                    "1",
                    "--l",
                    "2",
                ],
                "1.38629436112\n",
            ),
            (
                &["--kind", "multi-sample", "--samples", "0:1,1:1", "--l", "1"],
                "0.810930216216\n",
            ),
            (
                &["--kind", "chain", "--samples", "0:1,1:2,2:1", "--l", "2"],
                "1.38629436112\n",
            ),
        ];
        for (args, expected) in cases {
            let mut argv = vec!["bound"];
            argv.extend_from_slice(args);
            let (code, out, err) = run_capture(&argv);
            assert_eq!(code, 0, "{err}");
            assert_eq!(out, expected, "{args:?}");
        }
    }

    #[test]
    fn usage_and_input_errors_have_distinct_codes() {
        assert_eq!(
            run_capture(&["bound", "--kind", "two-endpoint", "--d1", "1"]).0,
            1
        );
        assert_eq!(run_capture(&["frobnicate"]).0, 1);
        assert_eq!(
            run_capture(&[
                "bound",
                "--kind",
                "one-endpoint",
                "--d1",
                "-1",
                "--lhat",
                "1"
            ])
            .0,
            2
        );
        assert_eq!(
            run_capture(&[
                "bound",
                "--kind",
                "chain",
                "--samples",
                "0:1,1:5",
                "--l",
                "1",
                "--strict"
            ])
            .0,
            2
        );
        assert_eq!(
            run_capture(&["validate", "--scenario", "/nonexistent/x.json"]).0,
            2
        );
        assert_eq!(run_capture(&["--help"]).0, 0);
    }
}
