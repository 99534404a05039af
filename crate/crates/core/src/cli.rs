//! Command-line driver: `solve`, `verify`, `generate`, `oracle`, `bench`.
//!
//! [`run`] takes explicit writers and returns the exit code so it can be
//! driven from tests. Exit codes: 0 success, 1 witness rejected by `verify`,
//! 2 bad input or size mismatch, 3 a size cap was exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::epsilon::Epsilon;
use crate::error::{Error, Result};
use crate::full::Stats;
use crate::graph::{gnp_connected, parse_graph, serialize_graph, Family, Format, Graph};
use crate::naive;
use crate::oracle;
use crate::solve::{solve, Algorithm, SolveConfig};
use crate::state_space::state_bound;
use crate::tree::Forest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "treedepth", version, about = "Exact tree-depth of undirected graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the tree-depth of a graph and optionally write a witness.
    Solve(SolveArgs),
    /// Check that a tree is an elimination tree of a graph.
    Verify(VerifyArgs),
    /// Write a generated graph.
    Generate(GenerateArgs),
    /// Brute-force minimal trees and structural checks for tiny graphs.
    Oracle(OracleArgs),
    /// Solve a family over a range of sizes and print CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Graph file, `-` for stdin.
    #[arg(long, short, conflicts_with = "family", required_unless_present = "family")]
    pub input: Option<PathBuf>,
    /// Generate the input instead, e.g. `path:10`, `grid:3x4`, `gnp:12:0.3`.
    #[arg(long)]
    pub family: Option<String>,
    /// `dimacs` or `edgelist`; guessed from the content when absent.
    #[arg(long)]
    pub format: Option<String>,
    /// Seed for `gnp` families; overrides the seed in the family spec.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// naive, pruned, full or auto.
    #[arg(long, default_value = "auto")]
    pub algorithm: String,
    #[arg(long, default_value = "1/10")]
    pub epsilon: String,
    #[arg(long, default_value_t = naive::DEFAULT_MAX_N)]
    pub max_n_naive: usize,
    #[arg(long, default_value_t = crate::full::DEFAULT_SMALL_N_CUTOFF)]
    pub small_n_cutoff: usize,
}

impl SolverArgs {
    fn config(&self) -> Result<SolveConfig> {
        Ok(SolveConfig {
            algorithm: self.algorithm.parse()?,
            epsilon: self.epsilon.parse()?,
            small_n_cutoff: self.small_n_cutoff,
            max_n_naive: self.max_n_naive,
        })
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Witness output; DOT when the name ends in `.dot`, parent array otherwise.
    #[arg(long)]
    pub witness: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Tree file, parent array or DOT.
    #[arg(long)]
    pub tree: PathBuf,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value = "edgelist")]
    pub format: String,
    /// Resample `gnp` graphs until connected (seed is incremented).
    #[arg(long)]
    pub connected: bool,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// path, cycle, complete, star, grid (3 x n/3) or gnp.
    #[arg(long)]
    pub family: String,
    /// `8..20` (inclusive) or a comma list.
    #[arg(long)]
    pub sizes: String,
    /// Comma list of `num/den` values.
    #[arg(long, default_value = "1/10")]
    pub epsilon: String,
    #[arg(long, default_value_t = 0.3)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "full")]
    pub algorithm: String,
    #[arg(long, default_value_t = naive::DEFAULT_MAX_N)]
    pub max_n_naive: usize,
    #[arg(long, default_value_t = crate::full::DEFAULT_SMALL_N_CUTOFF)]
    pub small_n_cutoff: usize,
    /// Print 0 in the runtime column so reruns are byte-identical.
    #[arg(long)]
    pub omit_runtime: bool,
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Generate(a) => cmd_generate(a, out),
        Command::Oracle(a) => cmd_oracle(a, out),
        Command::Bench(a) => cmd_bench(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        _ => EXIT_INPUT,
    }
}

fn guess_format(text: &str) -> Format {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with('c'));
    match first {
        Some(l) if l.starts_with("p ") => Format::Dimacs,
        _ => Format::EdgeList,
    }
}

fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

fn family_with_seed(spec: &str, seed: Option<u64>) -> Result<Family> {
    let mut fam: Family = spec.parse()?;
    if let (Family::Gnp { seed: s, .. }, Some(seed)) = (&mut fam, seed) {
        *s = seed;
    }
    Ok(fam)
}

/// The graph and the seed actually used, if any.
fn load_graph(a: &InputArgs) -> Result<(Graph, Option<u64>)> {
    if let Some(spec) = &a.family {
        let fam = family_with_seed(spec, a.seed)?;
        let seed = match fam {
            Family::Gnp { seed, .. } => Some(seed),
            _ => None,
        };
        return Ok((fam.build()?, seed));
    }
    let path = a.input.as_ref().expect("clap requires input or family");
    let text = read_text(path)?;
    let format = match &a.format {
        Some(f) => f.parse()?,
        None => guess_format(&text),
    };
    Ok((parse_graph(&text, format)?, a.seed))
}

fn parent_ids(f: &Forest) -> Vec<i64> {
    f.parent_array().iter().map(|p| p.map_or(-1, |p| p as i64)).collect()
}

#[derive(Serialize)]
struct SolveReport {
    n: usize,
    m: usize,
    treedepth: u32,
    algorithm: String,
    epsilon: String,
    exact: bool,
    parent: Vec<i64>,
    stats: Stats,
    runtime_ms: f64,
    seed: Option<u64>,
}

fn write_witness(path: &Path, f: &Forest) -> Result<()> {
    let text = if path.extension().is_some_and(|e| e == "dot") {
        f.to_dot()
    } else {
        f.to_parent_text()
    };
    fs::write(path, text)?;
    Ok(())
}

fn cmd_solve(a: &SolveArgs, out: &mut dyn Write) -> Result<i32> {
    let start = Instant::now();
    let cfg = a.solver.config()?;
    let (g, seed) = load_graph(&a.input)?;
    let sol = solve(&g, &cfg)?;
    if let Some(path) = &a.witness {
        write_witness(path, &sol.witness)?;
    }
    let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    if a.json {
        let report = SolveReport {
            n: g.n(),
            m: g.m(),
            treedepth: sol.td,
            algorithm: cfg.algorithm.name().into(),
            epsilon: cfg.epsilon.to_string(),
            exact: cfg.algorithm.is_exact(),
            parent: parent_ids(&sol.witness),
            stats: sol.stats,
            runtime_ms,
            seed,
        };
        serde_json::to_writer(&mut *out, &report).map_err(io::Error::from)?;
        writeln!(out)?;
    } else if cfg.algorithm.is_exact() {
        writeln!(out, "treedepth {}", sol.td)?;
    } else {
        writeln!(out, "treedepth <= {}", sol.td)?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let (g, _) = load_graph(&a.input)?;
    let text = read_text(&a.tree)?;
    let forest = if text.trim_start().starts_with("digraph") {
        Forest::parse_dot(&text)?
    } else {
        Forest::parse_parent_text(&text)?
    };
    if forest.n() != g.n() {
        return Err(Error::SizeMismatch {
            graph: g.n(),
            tree: forest.n(),
        });
    }
    match forest.first_violation(&g)? {
        None => {
            writeln!(out, "ok height {}", forest.height())?;
            Ok(EXIT_OK)
        }
        Some((u, v)) => {
            writeln!(
                out,
                "invalid: edge {u}-{v} is not an ancestor pair; height {}",
                forest.height()
            )?;
            Ok(EXIT_REJECTED)
        }
    }
}

fn cmd_generate(a: &GenerateArgs, out: &mut dyn Write) -> Result<i32> {
    let fam = family_with_seed(&a.family, a.seed)?;
    let format: Format = a.format.parse()?;
    let (g, seed) = match fam {
        Family::Gnp { n, p, seed } if a.connected => {
            let (g, used) = gnp_connected(n, p, seed)?;
            (g, Some(used))
        }
        Family::Gnp { seed, .. } => (fam.build()?, Some(seed)),
        _ => (fam.build()?, None),
    };
    let mut text = String::new();
    if let Some(seed) = seed {
        let marker = if format == Format::Dimacs { "c" } else { "#" };
        text.push_str(&format!("{marker} seed {seed}\n"));
    }
    text.push_str(&serialize_graph(&g, format));
    match &a.output {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct OracleReport {
    n: usize,
    m: usize,
    treedepth: u32,
    naive_treedepth: Option<u32>,
    embeddable_trees: usize,
    minimal_trees: usize,
    structural_violations: Option<Vec<String>>,
}

fn cmd_oracle(a: &OracleArgs, out: &mut dyn Write) -> Result<i32> {
    let (g, _) = load_graph(&a.input)?;
    let report = oracle::minimal_trees(&g)?;
    let naive_td = match naive::solve_connected(&g, naive::DEFAULT_MAX_N) {
        Ok((td, _)) => Some(td),
        Err(Error::EmptySet) => None,
        Err(e) => return Err(e),
    };
    let violations = if g.n() <= oracle::MAX_PROPERTY_CHECK_N {
        Some(oracle::check_minimal_tree_properties(&g)?)
    } else {
        None
    };
    let r = OracleReport {
        n: g.n(),
        m: g.m(),
        treedepth: report.td,
        naive_treedepth: naive_td,
        embeddable_trees: report.embeddable,
        minimal_trees: report.minimal_trees.len(),
        structural_violations: violations,
    };
    if a.json {
        serde_json::to_writer(&mut *out, &r).map_err(io::Error::from)?;
        writeln!(out)?;
    } else {
        writeln!(out, "treedepth {}", r.treedepth)?;
        if let Some(td) = r.naive_treedepth {
            writeln!(out, "naive {td}")?;
        }
        writeln!(out, "embeddable trees {}", r.embeddable_trees)?;
        writeln!(out, "minimal trees {}", r.minimal_trees)?;
        match &r.structural_violations {
            Some(v) if v.is_empty() => writeln!(out, "structural checks ok")?,
            Some(v) => {
                for line in v {
                    writeln!(out, "violation: {line}")?;
                }
            }
            None => writeln!(out, "structural checks skipped (n > {})", oracle::MAX_PROPERTY_CHECK_N)?,
        }
    }
    let agrees = r.naive_treedepth.is_none_or(|td| td == r.treedepth);
    let clean = r.structural_violations.as_ref().is_none_or(Vec::is_empty);
    Ok(if agrees && clean { EXIT_OK } else { EXIT_REJECTED })
}

fn parse_sizes(spec: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidParameter(format!("bad size list `{spec}`"));
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    spec.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect()
}

/// Bench graph of family `name` on about `n` vertices and its vertex count.
fn bench_graph(name: &str, n: usize, p: f64, seed: u64) -> Result<Graph> {
    match name {
        "path" => Family::Path(n).build(),
        "cycle" => Family::Cycle(n).build(),
        "complete" => Family::Complete(n).build(),
        "star" => Family::Star(n.saturating_sub(1)).build(),
        "grid" => {
            if !n.is_multiple_of(3) {
                return Err(Error::InvalidParameter(format!(
                    "grid bench sizes must be multiples of 3, got {n}"
                )));
            }
            Family::Grid { rows: 3, cols: n / 3 }.build()
        }
        "gnp" => gnp_connected(n, p, seed).map(|(g, _)| g),
        other => Err(Error::InvalidParameter(format!("unknown bench family `{other}`"))),
    }
}

fn cmd_bench(a: &BenchArgs, out: &mut dyn Write) -> Result<i32> {
    let sizes = parse_sizes(&a.sizes)?;
    let epsilons = a
        .epsilon
        .split(',')
        .map(|e| e.trim().parse::<Epsilon>())
        .collect::<Result<Vec<_>>>()?;
    let algorithm: Algorithm = a.algorithm.parse()?;
    writeln!(out, "# seed {}", a.seed)?;
    writeln!(
        out,
        "family,n,epsilon,treedepth,states,branches,fallbacks,runtime_ms,state_bound"
    )?;
    for &n in &sizes {
        let g = bench_graph(&a.family, n, a.p, a.seed)?;
        for &eps in &epsilons {
            let cfg = SolveConfig {
                algorithm,
                epsilon: eps,
                small_n_cutoff: a.small_n_cutoff,
                max_n_naive: a.max_n_naive,
            };
            let sol = solve(&g, &cfg)?;
            let runtime = if a.omit_runtime {
                0.0
            } else {
                sol.stats.runtime.as_secs_f64() * 1e3
            };
            writeln!(
                out,
                "{},{},{},{},{},{},{},{:.3},{}",
                a.family,
                g.n(),
                eps,
                sol.td,
                sol.stats.states,
                sol.stats.branches,
                sol.stats.fallbacks,
                runtime,
                state_bound(g.n(), eps)
            )?;
        }
    }
    Ok(EXIT_OK)
}
