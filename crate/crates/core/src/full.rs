//! The complete exact algorithm.
//!
//! After evaluating the pruned recursion on the state space, the solver
//! guesses the shape of a minimal tree the pruned recursion may have missed.
//! Such a tree has a root path `Z` ending at a branching point `v'`; the
//! subtrees `Q_i` hang off `Z - v'` and the subtrees `R_j` hang off `v'`. The
//! solver enumerates `Y = Q ∪ R_1` (`R_1` a smallest `R_j`), or `Y = Q` when
//! there is no `R_j`, derives `Z` and the parts from `Y`, and closes each
//! guess with an optimal ordering of `Z` ([`crate::moid`]). Every guess
//! yields a valid elimination tree, so the minimum over all guesses and
//! `td*(V)` is exact.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::epsilon::Epsilon;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::moid::{self, Constraint, MoidInstance};
use crate::naive::{self, NaiveTable};
use crate::pruned;
use crate::state_space::StateStore;
use crate::tree::RootedTree;
use crate::vertex_set::{for_each_subset_of_size, VertexSet};

/// Graphs with at most this many vertices go straight to the naive DP.
pub const DEFAULT_SMALL_N_CUTOFF: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FullConfig {
    pub epsilon: Epsilon,
    pub small_n_cutoff: usize,
    pub max_n_naive: usize,
}

impl Default for FullConfig {
    fn default() -> Self {
        FullConfig {
            epsilon: Epsilon::default(),
            small_n_cutoff: DEFAULT_SMALL_N_CUTOFF,
            max_n_naive: naive::DEFAULT_MAX_N,
        }
    }
}

impl FullConfig {
    /// Configuration that never delegates to the naive DP.
    pub fn without_cutoff(epsilon: Epsilon) -> Self {
        FullConfig {
            epsilon,
            small_n_cutoff: 0,
            ..FullConfig::default()
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Stats {
    /// Size of the state space.
    pub states: usize,
    /// Guesses that passed every consistency check and were solved.
    pub branches: usize,
    /// Guesses discarded by the consistency checks.
    pub rejected: usize,
    /// Solved guesses that needed the naive DP for one oversized part.
    pub fallbacks: usize,
    /// `td*(V)`, absent when infinite or when the naive DP was used.
    pub pruned_bound: Option<u32>,
    /// Whether the graph was small enough to delegate to the naive DP.
    pub delegated: bool,
    #[serde(rename = "runtime_ms", serialize_with = "as_millis")]
    pub runtime: Duration,
}

fn as_millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

impl Stats {
    pub fn accumulate(&mut self, other: &Stats) {
        self.states += other.states;
        self.branches += other.branches;
        self.rejected += other.rejected;
        self.fallbacks += other.fallbacks;
        self.delegated |= other.delegated;
        self.pruned_bound = match (self.pruned_bound, other.pruned_bound) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        self.runtime += other.runtime;
    }
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub td: u32,
    pub witness: RootedTree,
    pub stats: Stats,
}

/// One guessed decomposition of `V(G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchCandidate {
    pub y: usize,
    pub y_set: VertexSet,
    /// Component of `G[Y]` taken as `R_1`; `None` assumes there is no `R_j`.
    pub r1_choice: Option<usize>,
    pub z: VertexSet,
    pub q_parts: Vec<VertexSet>,
    /// `R_1` first.
    pub r_parts: Vec<VertexSet>,
}

impl BranchCandidate {
    pub fn q_size(&self) -> usize {
        self.q_parts.iter().map(VertexSet::len).sum()
    }

    pub fn r_size(&self) -> usize {
        self.r_parts.iter().map(VertexSet::len).sum()
    }

    fn parts(&self) -> impl Iterator<Item = &VertexSet> {
        self.q_parts.iter().chain(&self.r_parts)
    }
}

/// Result of closing one guess.
#[derive(Clone, Debug)]
pub struct CandidateOutcome {
    pub bound: u32,
    pub witness: RootedTree,
    pub used_fallback: bool,
}

/// Tree-depth of a connected graph with the default configuration.
pub fn treedepth(g: &Graph, epsilon: Epsilon) -> Result<SolveResult> {
    treedepth_with(
        g,
        &FullConfig {
            epsilon,
            ..FullConfig::default()
        },
    )
}

pub fn treedepth_with(g: &Graph, cfg: &FullConfig) -> Result<SolveResult> {
    let start = Instant::now();
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptySet);
    }
    if !g.is_connected(&g.vertices()) {
        return Err(Error::Disconnected);
    }
    if n <= cfg.small_n_cutoff {
        let (td, witness) = naive::solve_connected(g, cfg.max_n_naive)?;
        return Ok(SolveResult {
            td,
            witness,
            stats: Stats {
                delegated: true,
                runtime: start.elapsed(),
                ..Stats::default()
            },
        });
    }

    let eps = cfg.epsilon;
    let mut store = StateStore::enumerate(g, eps)?;
    pruned::run_pruned(g, &mut store)?;
    let all = g.vertices();
    let pruned_bound = pruned::td_star(&store, &all)?.get();
    let mut best: Option<(u32, RootedTree)> = match pruned_bound {
        Some(td) => Some((td, pruned::reconstruct(g, &store, &all)?)),
        None => None,
    };

    let branches = AtomicUsize::new(0);
    let rejected = AtomicUsize::new(0);
    let fallbacks = AtomicUsize::new(0);

    let mut y = 0;
    while y < n && eps.within_branch_range(y, n) {
        let mut guesses = Vec::new();
        for_each_subset_of_size(n, y, |s| guesses.push(s.clone()));
        let per_guess: Vec<Option<CandidateOutcome>> = guesses
            .par_iter()
            .map(|y_set| -> Result<Option<CandidateOutcome>> {
                let choices = g.components(y_set).len();
                let mut local: Option<CandidateOutcome> = None;
                for choice in std::iter::once(None).chain((0..choices).map(Some)) {
                    let Some(cand) = decompose(g, eps, y_set, choice) else {
                        rejected.fetch_add(1, Ordering::Relaxed);
                        continue;
                    };
                    match solve_candidate(g, &cand, &store, cfg.max_n_naive)? {
                        None => {
                            rejected.fetch_add(1, Ordering::Relaxed);
                        }
                        Some(out) => {
                            branches.fetch_add(1, Ordering::Relaxed);
                            if out.used_fallback {
                                fallbacks.fetch_add(1, Ordering::Relaxed);
                            }
                            if local.as_ref().is_none_or(|b| out.bound < b.bound) {
                                local = Some(out);
                            }
                        }
                    }
                }
                Ok(local)
            })
            .collect::<Result<_>>()?;
        // sequential reduction keeps the first minimizer in exploration order
        for out in per_guess.into_iter().flatten() {
            if best.as_ref().is_none_or(|(b, _)| out.bound < *b) {
                best = Some((out.bound, out.witness));
            }
        }
        y += 1;
    }

    let (td, witness) = best.ok_or_else(|| Error::Store("no finite bound found".into()))?;
    if witness.height() != td || !witness.embeds(g)? {
        return Err(Error::InvalidTree("final witness failed validation".into()));
    }
    Ok(SolveResult {
        td,
        witness,
        stats: Stats {
            states: store.len(),
            branches: branches.into_inner(),
            rejected: rejected.into_inner(),
            fallbacks: fallbacks.into_inner(),
            pruned_bound,
            delegated: false,
            runtime: start.elapsed(),
        },
    })
}

/// Derives `Z` and the parts from a guessed `Y`, or `None` when the guess
/// fails a consistency check that every true decomposition satisfies.
///
/// `Y` may be empty only under the no-`R_j` assumption, which stands for a
/// minimal tree that is a bare path.
pub fn decompose(g: &Graph, eps: Epsilon, y_set: &VertexSet, r1_choice: Option<usize>) -> Option<BranchCandidate> {
    let n = g.n();
    let y = y_set.len();
    if y >= n {
        return None;
    }
    let all = g.vertices();
    let comps = g.components(y_set);

    let cand = match r1_choice {
        None => BranchCandidate {
            y,
            y_set: y_set.clone(),
            r1_choice,
            z: all.difference(y_set),
            q_parts: comps,
            r_parts: Vec::new(),
        },
        Some(i) => {
            if i >= comps.len() {
                return None;
            }
            let mut q_parts = comps;
            let r1 = q_parts.remove(i);
            let z = g.neighborhood(y_set);
            let rest = all.difference(&z).difference(y_set);
            let mut r_parts = vec![r1];
            r_parts.extend(g.components(&rest));
            BranchCandidate {
                y,
                y_set: y_set.clone(),
                r1_choice,
                z,
                q_parts,
                r_parts,
            }
        }
    };

    let q = cand.q_size();
    let r = cand.r_size();
    if cand.z.is_empty() || cand.z.len() + q + r != n {
        return None;
    }
    if !eps.below_two_eps(q, n) || !eps.below_half_plus(r, q, n) {
        return None;
    }
    if cand.parts().any(|p| !g.neighborhood(p).is_subset(&cand.z)) {
        return None;
    }
    if !cand.r_parts.is_empty() {
        let r1 = cand.r_parts[0].len();
        if cand.r_parts.len() < 2 || cand.r_parts.iter().any(|p| p.len() < r1) {
            return None;
        }
        if !eps.below_quarter_plus(r1, q, n) {
            return None;
        }
        let mut q_set = VertexSet::empty(n);
        for p in &cand.q_parts {
            q_set.union_with(p);
        }
        if cand
            .r_parts
            .iter()
            .any(|rj| g.neighborhood(&rj.union(&q_set)) != cand.z)
        {
            return None;
        }
    }
    Some(cand)
}

/// Closes a guess: part depths from the store (or the naive DP for a single
/// oversized `R_j`), then an optimal ordering of `Z`. `Ok(None)` rejects the
/// guess.
pub fn solve_candidate(
    g: &Graph,
    c: &BranchCandidate,
    store: &StateStore,
    max_n_naive: usize,
) -> Result<Option<CandidateOutcome>> {
    let n = g.n();
    let eps = store.epsilon();
    let t = store.threshold();
    let a = c.q_parts.len();

    let oversized: Vec<usize> = c
        .parts()
        .enumerate()
        .filter(|(_, p)| p.len() > t)
        .map(|(i, _)| i)
        .collect();
    let fallback_part = match oversized.as_slice() {
        [] => None,
        &[i] => {
            // only R_j with j > 1 may be large, and only when Y is small
            if i <= a || !eps.below_two_eps(c.y, n) || !eps.below_half_plus(c.r_parts[i - a].len(), c.y, n) {
                return Ok(None);
            }
            Some(i)
        }
        _ => return Ok(None),
    };

    let mut depths = Vec::with_capacity(a + c.r_parts.len());
    let mut trees = Vec::with_capacity(a + c.r_parts.len());
    for (i, part) in c.parts().enumerate() {
        if Some(i) == fallback_part {
            let mut table = NaiveTable::default();
            let td = naive::td_naive_capped(g, part, &mut table, Some(store), max_n_naive)?;
            depths.push(td);
            trees.push(naive::reconstruct_with_reuse(g, part, &table, Some(store))?);
        } else {
            let td = pruned::td_star(store, part)?
                .get()
                .ok_or_else(|| Error::Store(format!("part {part} below the threshold has infinite td*")))?;
            depths.push(td);
            trees.push(pruned::reconstruct(g, store, part)?);
        }
    }

    let z: Vec<usize> = c.z.iter().collect();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in z.iter().enumerate() {
        index[v] = i;
    }
    let constraints = c
        .parts()
        .zip(&depths)
        .map(|(p, &h)| Constraint {
            members: g.neighborhood(p).iter().map(|v| index[v]).collect(),
            delay: h,
        })
        .collect();
    let inst = MoidInstance::new(z, constraints)?;
    let sol = moid::solve(&inst);
    let positions = moid::attachment_positions(&inst, &sol);
    let attachments: Vec<(RootedTree, usize)> = trees.into_iter().zip(positions).collect();
    let witness = RootedTree::assemble(n, &sol.order(&inst), &attachments)?;
    if witness.height() != sol.mu {
        return Err(Error::InvalidTree(format!(
            "assembled height {} differs from ordering weight {}",
            witness.height(),
            sol.mu
        )));
    }
    Ok(Some(CandidateOutcome {
        bound: sol.mu,
        witness,
        used_fallback: fallback_part.is_some(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gnp_connected, Family};

    fn naive_td(g: &Graph) -> u32 {
        naive::solve_connected(g, 30).unwrap().0
    }

    fn evaluated(g: &Graph, eps: Epsilon) -> StateStore {
        let mut store = StateStore::enumerate(g, eps).unwrap();
        pruned::run_pruned(g, &mut store).unwrap();
        store
    }

    #[test]
    fn decompose_p6_no_r() {
        let g = Family::Path(6).build().unwrap();
        let y = VertexSet::singleton(6, 0);
        let c = decompose(&g, Epsilon::default(), &y, None).unwrap();
        assert_eq!(c.z, VertexSet::from_vertices(6, [1, 2, 3, 4, 5]));
        assert_eq!(c.q_parts, vec![y.clone()]);
        assert!(c.r_parts.is_empty());
    }

    #[test]
    fn decompose_p6_single_r_is_rejected() {
        // Z = N({0}) = {1} and the rest {2..5} is one component, so b = 2 and
        // Z = N(R_j ∪ Q) holds for both parts; the size check rejects.
        let g = Family::Path(6).build().unwrap();
        let y = VertexSet::singleton(6, 0);
        // |R| = 5 is not below (1/2 + 1/10) * 6 = 3.6
        assert!(decompose(&g, Epsilon::default(), &y, Some(0)).is_none());
    }

    #[test]
    fn decompose_rejects_b_equal_one() {
        // in K13, Y = {1} gives Z = V - {1} and nothing left over, so b = 1
        // while every size check passes
        let g = Family::Complete(13).build().unwrap();
        let y = VertexSet::singleton(13, 1);
        assert!(decompose(&g, Epsilon::default(), &y, None).is_some());
        assert!(decompose(&g, Epsilon::default(), &y, Some(0)).is_none());
    }

    #[test]
    fn decompose_rejects_full_set_and_bad_choice() {
        let g = Family::Path(6).build().unwrap();
        assert!(decompose(&g, Epsilon::default(), &g.vertices(), None).is_none());
        assert!(decompose(&g, Epsilon::default(), &VertexSet::singleton(6, 0), Some(3)).is_none());
    }

    #[test]
    fn empty_guess_is_the_bare_path() {
        let g = Family::Complete(13).build().unwrap();
        let store = evaluated(&g, Epsilon::default());
        let c = decompose(&g, Epsilon::default(), &VertexSet::empty(13), None).unwrap();
        let out = solve_candidate(&g, &c, &store, 26).unwrap().unwrap();
        assert_eq!(out.bound, 13);
        assert!(out.witness.embeds(&g).unwrap());
    }

    #[test]
    fn candidates_on_p10_are_upper_bounds() {
        let g = Family::Path(10).build().unwrap();
        let eps = Epsilon::default();
        let store = evaluated(&g, eps);
        let mut solved = 0;
        for y in 0..4 {
            for_each_subset_of_size(10, y, |ys| {
                for choice in std::iter::once(None).chain((0..g.components(ys).len()).map(Some)) {
                    if let Some(c) = decompose(&g, eps, ys, choice) {
                        if let Some(out) = solve_candidate(&g, &c, &store, 26).unwrap() {
                            assert!(out.bound >= 4);
                            assert!(out.witness.embeds(&g).unwrap());
                            assert_eq!(out.witness.height(), out.bound);
                            solved += 1;
                        }
                    }
                }
            });
        }
        assert!(solved > 0);
    }

    #[test]
    fn single_part_bound_shape() {
        // star K_{1,12}: Y = {1}, no R: Z = everything but leaf 1, one part
        // {1} with N = {0} and depth 1, so mu = max(|Z|, sigma(0) + 1) = |Z|.
        let g = Family::Star(12).build().unwrap();
        let store = evaluated(&g, Epsilon::default());
        let c = decompose(&g, Epsilon::default(), &VertexSet::singleton(13, 1), None).unwrap();
        let out = solve_candidate(&g, &c, &store, 26).unwrap().unwrap();
        assert_eq!(out.bound, 12);
    }

    #[test]
    fn two_oversized_parts_are_rejected() {
        // two K7 blobs glued through a single hub: parts of size 7 exceed
        // floor(0.4 * 15) = 6.
        let mut edges = Vec::new();
        for base in [1usize, 8] {
            for u in base..base + 7 {
                for v in u + 1..base + 7 {
                    edges.push((u, v));
                }
            }
            edges.push((0, base));
        }
        let g = Graph::from_edges(15, edges).unwrap();
        let store = evaluated(&g, Epsilon::default());
        let c = BranchCandidate {
            y: 0,
            y_set: VertexSet::empty(15),
            r1_choice: Some(0),
            z: VertexSet::singleton(15, 0),
            q_parts: vec![],
            r_parts: vec![VertexSet::from_vertices(15, 1..8), VertexSet::from_vertices(15, 8..15)],
        };
        assert!(solve_candidate(&g, &c, &store, 26).unwrap().is_none());
    }

    #[test]
    fn p10_and_k8() {
        let g = Family::Path(10).build().unwrap();
        let r = treedepth_with(&g, &FullConfig::without_cutoff(Epsilon::default())).unwrap();
        assert_eq!(r.td, 4);
        assert!(r.witness.embeds(&g).unwrap());
        assert_eq!(r.witness.height(), 4);

        let k8 = Family::Complete(8).build().unwrap();
        assert_eq!(treedepth(&k8, Epsilon::default()).unwrap().td, 8);
        let r = treedepth_with(&k8, &FullConfig::without_cutoff(Epsilon::default())).unwrap();
        assert_eq!(r.td, 8);
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = Graph::empty(3);
        assert!(matches!(treedepth(&g, Epsilon::default()), Err(Error::Disconnected)));
    }

    #[test]
    fn agrees_with_naive_on_random_graphs() {
        let cfg = FullConfig::without_cutoff(Epsilon::default());
        for seed in 0..20 {
            let (g, _) = gnp_connected(11, 0.3, 500 + seed).unwrap();
            let r = treedepth_with(&g, &cfg).unwrap();
            assert_eq!(r.td, naive_td(&g), "seed {seed}");
            assert!(r.witness.embeds(&g).unwrap());
        }
    }

    #[test]
    fn every_tiny_graph_exact() {
        // all connected graphs on up to 5 vertices
        for n in 1..=5usize {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for mask in 0u32..(1 << pairs.len()) {
                let edges = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e);
                let g = Graph::from_edges(n, edges).unwrap();
                if !g.is_connected(&g.vertices()) {
                    continue;
                }
                for eps in [Epsilon::default(), Epsilon::new(1, 7).unwrap()] {
                    let r = treedepth_with(&g, &FullConfig::without_cutoff(eps)).unwrap();
                    assert_eq!(r.td, naive_td(&g), "{:?}", g.edges());
                }
            }
        }
    }
}
