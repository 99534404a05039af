//! One entry point over all solvers, accepting disconnected graphs.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::epsilon::Epsilon;
use crate::error::{Error, Result};
use crate::full::{self, FullConfig, Stats};
use crate::graph::Graph;
use crate::naive;
use crate::pruned;
use crate::state_space::StateStore;
use crate::tree::{Forest, RootedTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Algorithm {
    Naive,
    /// The pruned recursion alone; an upper bound that may be infinite.
    Pruned,
    /// Branching solver with no small-graph delegation.
    Full,
    /// Branching solver that hands small graphs to the naive DP.
    #[default]
    Auto,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Naive => "naive",
            Algorithm::Pruned => "pruned",
            Algorithm::Full => "full",
            Algorithm::Auto => "auto",
        }
    }

    /// Whether the reported value is the exact tree-depth.
    pub fn is_exact(self) -> bool {
        self != Algorithm::Pruned
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Algorithm::Naive),
            "pruned" => Ok(Algorithm::Pruned),
            "full" => Ok(Algorithm::Full),
            "auto" => Ok(Algorithm::Auto),
            other => Err(Error::InvalidParameter(format!("unknown algorithm `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveConfig {
    pub algorithm: Algorithm,
    pub epsilon: Epsilon,
    pub small_n_cutoff: usize,
    pub max_n_naive: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        let f = FullConfig::default();
        SolveConfig {
            algorithm: Algorithm::Auto,
            epsilon: f.epsilon,
            small_n_cutoff: f.small_n_cutoff,
            max_n_naive: f.max_n_naive,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Solution {
    /// Maximum over components; 0 for the empty graph.
    pub td: u32,
    pub witness: Forest,
    /// Summed over components.
    pub stats: Stats,
}

/// Solves each component with the configured algorithm.
pub fn solve(g: &Graph, cfg: &SolveConfig) -> Result<Solution> {
    let start = Instant::now();
    let mut stats = Stats::default();
    let (td, witness) = naive::treedepth_disconnected(g, |comp| {
        let (td, tree, s) = solve_component(comp, cfg)?;
        stats.accumulate(&s);
        Ok((td, tree))
    })?;
    stats.runtime = start.elapsed();
    if witness.height() != td || !witness.embeds(g)? {
        return Err(Error::InvalidTree("witness failed validation".into()));
    }
    Ok(Solution { td, witness, stats })
}

fn solve_component(g: &Graph, cfg: &SolveConfig) -> Result<(u32, RootedTree, Stats)> {
    let full_cfg = |cutoff| FullConfig {
        epsilon: cfg.epsilon,
        small_n_cutoff: cutoff,
        max_n_naive: cfg.max_n_naive,
    };
    match cfg.algorithm {
        Algorithm::Naive => {
            let (td, tree) = naive::solve_connected(g, cfg.max_n_naive)?;
            Ok((td, tree, Stats::default()))
        }
        Algorithm::Pruned => {
            let mut store = StateStore::enumerate(g, cfg.epsilon)?;
            pruned::run_pruned(g, &mut store)?;
            let all = g.vertices();
            let td = pruned::td_star(&store, &all)?.get().ok_or_else(|| {
                Error::Store("td* of the whole vertex set is infinite; use the full algorithm".into())
            })?;
            let tree = pruned::reconstruct(g, &store, &all)?;
            let stats = Stats {
                states: store.len(),
                pruned_bound: Some(td),
                ..Stats::default()
            };
            Ok((td, tree, stats))
        }
        Algorithm::Full => {
            let r = full::treedepth_with(g, &full_cfg(0))?;
            Ok((r.td, r.witness, r.stats))
        }
        Algorithm::Auto => {
            let r = full::treedepth_with(g, &full_cfg(cfg.small_n_cutoff))?;
            Ok((r.td, r.witness, r.stats))
        }
    }
}
