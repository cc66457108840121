//! Command-line front end for `edgemerge`.
//!
//! The binary is a thin wrapper around [`run`]; everything it prints is
//! produced here so the reports can be tested without spawning processes.

mod plan;
mod report;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use edgemerge_core::oracle::{
    enumerate_markings_capped, evaluate_candidates, grid_search_path, sample_fractional_markings,
    sample_redistributions, GridSpec, OracleVerdict,
};
use edgemerge_core::{
    load_graph, merge_independent, merge_single_edge, merge_subpath, parse_weight, plan_tree, profile, total_error,
    ContractionRequest, EdgeId, ErrorReport, Mode, Redistribution, TreeMergePlan, Weight, WeightedGraph,
};
use thiserror::Error;

pub use plan::Plan;
pub use report::Format;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("plan line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph: {0}")]
    Graph(edgemerge_core::Error),

    #[error(transparent)]
    Invalid(#[from] edgemerge_core::Error),

    #[error("predicted error {predicted} differs from recomputed error {recomputed}")]
    Inconsistent { predicted: String, recomputed: String },

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 1 for unreadable input, 2 for invalid requests, 3 for internal
    /// inconsistencies, 4 for oracle instances over the size cap.
    pub fn exit_code(&self) -> u8 {
        use edgemerge_core::Error as E;
        match self {
            CliError::Io { .. } | CliError::Parse { .. } => 1,
            CliError::Graph(E::Parse { .. } | E::Empty) => 1,
            CliError::Inconsistent { .. } => 3,
            CliError::Invalid(E::TooLarge { .. }) => 4,
            CliError::Graph(_) | CliError::Invalid(_) | CliError::Usage(_) => 2,
        }
    }
}

/// Exit code of a `verify` run whose oracle beat the claimed optimum.
pub const REFUTED_EXIT: u8 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "edgemerge",
    version,
    about = "Contract edges of weighted paths and trees with minimal distance distortion"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Plan a contraction and report the new weights and the error.
    Compress(CommonArgs),
    /// Check a planned contraction against brute-force oracles.
    Verify(VerifyArgs),
    /// Print the subtree sizes around a contracted tree edge.
    Profile(CommonArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Edge list: one `u v w` per line.
    pub graph: PathBuf,
    /// Plan: `contract u v` lines and an optional `mode <name>` line.
    pub plan: PathBuf,
    /// Overrides the plan's mode.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Grid spacing for new neighbour weights, or `none`.
    #[arg(long, default_value = "none", value_parser = parse_step)]
    pub grid_step: GridStep,
    /// Random redistributions to try; 0 disables sampling.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest search space (grid cells, markings or samples) an oracle may visit.
    #[arg(long, default_value_t = 100_000_000)]
    pub max_oracle_size: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Single,
    Independent,
    Subpath,
    Tree,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Single => Mode::SingleEdge,
            ModeArg::Independent => Mode::IndependentSet,
            ModeArg::Subpath => Mode::Subpath,
            ModeArg::Tree => Mode::TreeSingleEdge,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridStep {
    None,
    Step(Weight),
}

fn parse_step(text: &str) -> Result<GridStep, String> {
    if text == "none" {
        return Ok(GridStep::None);
    }
    let step = parse_weight(text)?;
    if step <= Weight::from_integer(0) {
        return Err("grid step must be positive".into());
    }
    Ok(GridStep::Step(step))
}

/// Runs one parsed command and returns its output and exit code.
pub fn run(cli: &Cli) -> Result<(String, u8), CliError> {
    match &cli.command {
        Command::Compress(args) => {
            let (g, req) = load(args)?;
            let outcome = plan(&g, &req)?;
            let report = check(&g, &req, &outcome)?;
            Ok((report::compress(&g, &req, &outcome, &report, args.format)?, 0))
        }
        Command::Verify(args) => verify(args),
        Command::Profile(args) => {
            let (g, req) = load(args)?;
            let e = single_target(&req)?;
            Ok((report::profile(&g, &profile(&g, e)?, args.format), 0))
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load(args: &CommonArgs) -> Result<(WeightedGraph, ContractionRequest), CliError> {
    let g = load_graph(&read(&args.graph)?).map_err(CliError::Graph)?;
    let plan = Plan::parse(&read(&args.plan)?)?;
    let req = plan.request(&g, args.mode.map(Mode::from))?;
    Ok((g, req))
}

fn single_target(req: &ContractionRequest) -> Result<EdgeId, CliError> {
    match req.targets() {
        [e] => Ok(*e),
        other => Err(edgemerge_core::Error::ExpectedSingleEdge(other.len()).into()),
    }
}

/// A planned contraction before it is checked and reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub mode: Mode,
    pub redistribution: Redistribution,
    pub predicted_error: Weight,
    pub tree: Option<TreeMergePlan>,
}

/// Dispatches to the planner for the request's mode.
pub fn plan(g: &WeightedGraph, req: &ContractionRequest) -> Result<Outcome, CliError> {
    let mode = req.mode();
    let (redistribution, predicted_error, tree) = match mode {
        Mode::SingleEdge => {
            let p = merge_single_edge(g, single_target(req)?)?;
            (p.redistribution, p.predicted_error, None)
        }
        Mode::Subpath => {
            let p = merge_subpath(g, req.targets())?;
            (p.redistribution, p.predicted_error, None)
        }
        Mode::IndependentSet => {
            let p = merge_independent(g, req.targets())?;
            (p.redistribution, p.predicted_error, None)
        }
        Mode::TreeSingleEdge => {
            let p = plan_tree(g, single_target(req)?)?;
            (p.redistribution.clone(), p.predicted_error, Some(p))
        }
    };
    Ok(Outcome { mode, redistribution, predicted_error, tree })
}

/// Recomputes the error of `outcome` and fails if it differs from the
/// prediction.
pub fn check(g: &WeightedGraph, req: &ContractionRequest, outcome: &Outcome) -> Result<ErrorReport, CliError> {
    let mut report = total_error(g, req, &outcome.redistribution)?;
    if report.total != outcome.predicted_error {
        return Err(CliError::Inconsistent {
            predicted: edgemerge_core::format_weight(&outcome.predicted_error),
            recomputed: edgemerge_core::format_weight(&report.total),
        });
    }
    report.unit_count = outcome.tree.as_ref().map(TreeMergePlan::unit_count);
    Ok(report)
}

fn verify(args: &VerifyArgs) -> Result<(String, u8), CliError> {
    let step = match args.grid_step {
        GridStep::None if args.samples == 0 => {
            return Err(CliError::Usage("no oracle selected: pass --grid-step or a positive --samples".into()))
        }
        GridStep::None => None,
        GridStep::Step(s) => Some(s),
    };
    let (g, req) = load(&args.common)?;
    let outcome = plan(&g, &req)?;
    check(&g, &req, &outcome)?;
    let cap = args.max_oracle_size;

    let mut runs: Vec<(&'static str, OracleVerdict)> = Vec::new();
    if outcome.mode == Mode::TreeSingleEdge {
        let e = single_target(&req)?;
        runs.push(("enumerate", enumerate_markings_capped(&g, e, cap)?));
        if args.samples > 0 {
            within_cap(args.samples as u128, cap)?;
            runs.push(("fractional", sample_fractional_markings(&g, e, args.samples, args.seed)?));
        }
    }
    if let Some(step) = step {
        let vary = neighbour_edges(&g, &req);
        let spec = GridSpec::new(step).with_max_cells(cap);
        runs.push(("grid", grid_search_path(&g, &req, &spec, &vary, outcome.predicted_error)?));
    }
    if args.samples > 0 {
        within_cap(args.samples as u128, cap)?;
        runs.push(("sample", sample_redistributions(&g, &req, args.samples, args.seed, outcome.predicted_error)?));
        let own =
            evaluate_candidates(&g, &req, std::slice::from_ref(&outcome.redistribution), outcome.predicted_error)?;
        if own.best_value != outcome.predicted_error {
            return Err(CliError::Inconsistent {
                predicted: edgemerge_core::format_weight(&outcome.predicted_error),
                recomputed: edgemerge_core::format_weight(&own.best_value),
            });
        }
    }

    let confirmed = runs.iter().all(|(_, v)| v.is_confirmed());
    let mut out = report::verify(&g, &runs, args.common.format);
    if args.common.format == Format::Table {
        let _ = writeln!(out, "\nresult: {}", if confirmed { "confirmed" } else { "refuted" });
    }
    Ok((out, if confirmed { 0 } else { REFUTED_EXIT }))
}

fn within_cap(size: u128, cap: u128) -> Result<(), CliError> {
    if size > cap {
        return Err(edgemerge_core::Error::TooLarge { size, cap }.into());
    }
    Ok(())
}

/// Surviving edges adjacent to a contracted edge.
fn neighbour_edges(g: &WeightedGraph, req: &ContractionRequest) -> Vec<EdgeId> {
    let mut out: Vec<EdgeId> = req
        .targets()
        .iter()
        .flat_map(|&t| {
            let edge = g.edges()[t.0];
            [edge.u, edge.v].into_iter().flat_map(|v| g.neighbors(v).iter().map(|&(_, e)| e))
        })
        .filter(|&e| !req.is_target(e))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn request(text: &str, plan: &str) -> (WeightedGraph, ContractionRequest) {
        let g = load_graph(text).unwrap();
        let req = Plan::parse(plan).unwrap().request(&g, None).unwrap();
        (g, req)
    }

    #[test]
    fn tampered_prediction_is_an_inconsistency() {
        let (g, req) = request("a b 2\nb c 3\nc d 4\nd e 1\n", "contract b c\n");
        let mut outcome = plan(&g, &req).unwrap();
        assert!(check(&g, &req, &outcome).is_ok());
        outcome.predicted_error += Weight::from_integer(1);
        let err = check(&g, &req, &outcome).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Graph(edgemerge_core::Error::Parse { line: 1, message: String::new() }).exit_code(), 1);
        assert_eq!(CliError::Graph(edgemerge_core::Error::HasCycle { line: 3 }).exit_code(), 2);
        assert_eq!(CliError::Invalid(edgemerge_core::Error::NotContiguous).exit_code(), 2);
        assert_eq!(CliError::Invalid(edgemerge_core::Error::TooLarge { size: 2, cap: 1 }).exit_code(), 4);
    }

    #[test]
    fn neighbour_edges_skip_targets() {
        let (g, req) = request("1 2 1\n2 3 1\n3 4 1\n4 5 1\n", "contract 2 3\ncontract 3 4\n");
        assert_eq!(neighbour_edges(&g, &req), vec![EdgeId(0), EdgeId(3)]);
    }

    #[test]
    fn grid_step_values() {
        assert_eq!(parse_step("none"), Ok(GridStep::None));
        assert_eq!(parse_step("1/64"), Ok(GridStep::Step(edgemerge_core::weight::ratio(1, 64))));
        assert!(parse_step("0").is_err());
    }
}
