//! Memoized tree-depth recursion over connected vertex subsets.
//!
//! `td(S) = 1` for a single vertex, otherwise `1 + min_v max_H td(H)` over the
//! components `H` of `G[S] - v`. Evaluation is top-down, so only connected
//! sets reachable by repeated vertex deletion are ever stored.

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pruned;
use crate::state_space::StateStore;
use crate::tree::{Forest, RootedTree};
use crate::vertex_set::VertexSet;

/// Default limit on the size of a set handed to the naive recursion.
pub const DEFAULT_MAX_N: usize = 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NaiveEntry {
    pub td: u32,
    pub root: usize,
}

#[derive(Clone, Debug, Default)]
pub struct NaiveTable {
    entries: FxHashMap<VertexSet, NaiveEntry>,
}

impl NaiveTable {
    pub fn get(&self, s: &VertexSet) -> Option<NaiveEntry> {
        self.entries.get(s).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VertexSet, &NaiveEntry)> {
        self.entries.iter()
    }
}

/// Tree-depth of the connected graph `g[s]` with the default size cap.
///
/// When `reuse` holds an evaluated state store for `g`, sets no larger than
/// its threshold are read from it instead of being recomputed.
pub fn td_naive(g: &Graph, s: &VertexSet, table: &mut NaiveTable, reuse: Option<&StateStore>) -> Result<u32> {
    td_naive_capped(g, s, table, reuse, DEFAULT_MAX_N)
}

pub fn td_naive_capped(
    g: &Graph,
    s: &VertexSet,
    table: &mut NaiveTable,
    reuse: Option<&StateStore>,
    max_n: usize,
) -> Result<u32> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    if s.len() > max_n {
        return Err(Error::CapExceeded {
            what: "naive DP vertex count",
            got: s.len(),
            cap: max_n,
            hint: "; use the full algorithm",
        });
    }
    if !g.is_connected(s) {
        return Err(Error::Disconnected);
    }
    let reuse = reuse.filter(|st| st.is_evaluated() && st.n() == g.n());
    Ok(solve(g, s, table, reuse))
}

fn from_store(store: Option<&StateStore>, s: &VertexSet) -> Option<u32> {
    let store = store?;
    if s.len() > store.threshold() {
        return None;
    }
    store.value(s).and_then(|v| v.td_star.get())
}

fn solve(g: &Graph, s: &VertexSet, table: &mut NaiveTable, reuse: Option<&StateStore>) -> u32 {
    if let Some(e) = table.entries.get(s) {
        return e.td;
    }
    if let Some(td) = from_store(reuse, s) {
        return td;
    }
    let entry = if s.len() == 1 {
        NaiveEntry {
            td: 1,
            root: s.first().expect("nonempty"),
        }
    } else {
        let mut best = NaiveEntry {
            td: u32::MAX,
            root: usize::MAX,
        };
        for v in s {
            let worst = g
                .components(&s.without(v))
                .iter()
                .map(|c| solve(g, c, table, reuse))
                .max()
                .unwrap_or(0);
            if worst + 1 < best.td {
                best = NaiveEntry { td: worst + 1, root: v };
            }
        }
        best
    };
    table.entries.insert(s.clone(), entry);
    entry.td
}

/// Witness tree for `g[s]` from the choices recorded in `table`.
pub fn reconstruct_naive(g: &Graph, s: &VertexSet, table: &NaiveTable) -> Result<RootedTree> {
    reconstruct_with_reuse(g, s, table, None)
}

/// Like [`reconstruct_naive`], falling back to the state store for sets the
/// table skipped because they were reused.
pub fn reconstruct_with_reuse(
    g: &Graph,
    s: &VertexSet,
    table: &NaiveTable,
    reuse: Option<&StateStore>,
) -> Result<RootedTree> {
    if let Some(e) = table.get(s) {
        let subtrees = g
            .components(&s.without(e.root))
            .iter()
            .map(|c| reconstruct_with_reuse(g, c, table, reuse))
            .collect::<Result<Vec<_>>>()?;
        return RootedTree::with_root(g.n(), e.root, &subtrees);
    }
    match reuse {
        Some(store) if from_store(Some(store), s).is_some() => pruned::reconstruct(g, store, s),
        _ => Err(Error::MissingEntry(s.len())),
    }
}

/// Tree-depth and witness of a connected graph by the naive recursion.
pub fn solve_connected(g: &Graph, max_n: usize) -> Result<(u32, RootedTree)> {
    let all = g.vertices();
    let mut table = NaiveTable::default();
    let td = td_naive_capped(g, &all, &mut table, None, max_n)?;
    let tree = reconstruct_naive(g, &all, &table)?;
    Ok((td, tree))
}

/// Maximum over connected components of `per_component`, with a forest
/// witness over the original ids. The empty graph has tree-depth 0.
pub fn treedepth_disconnected<F>(g: &Graph, mut per_component: F) -> Result<(u32, Forest)>
where
    F: FnMut(&Graph) -> Result<(u32, RootedTree)>,
{
    let mut trees = Vec::new();
    let mut td = 0;
    for comp in g.components(&g.vertices()) {
        let (sub, map) = g.induced(&comp);
        let (d, t) = per_component(&sub)?;
        td = td.max(d);
        let mut parent = vec![None; g.n()];
        for (i, &v) in map.iter().enumerate() {
            parent[v] = t.parent(i).map(|p| map[p]);
        }
        trees.push(RootedTree::from_parents(parent, comp)?);
    }
    Ok((td, Forest::new(g.n(), trees)?))
}
