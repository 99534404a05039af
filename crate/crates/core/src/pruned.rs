//! Tree-depth recursion restricted to the state space.
//!
//! `td*(X) = 1` for singletons, otherwise `1 + min_v max_H td*(H)` over the
//! components `H` of `G[X] - v`, where any component outside the store makes
//! that choice of `v` infinite. `td*` never undercounts tree-depth and is
//! exact for every member of size at most the store threshold.

use rayon::prelude::*;

use crate::epsilon::Bound;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::state_space::{StateStore, StateValue};
use crate::tree::RootedTree;
use crate::vertex_set::VertexSet;

fn check_graph(g: &Graph, store: &StateStore) -> Result<()> {
    if g.n() != store.n() {
        return Err(Error::Store(format!(
            "store built for {} vertices, graph has {}",
            store.n(),
            g.n()
        )));
    }
    Ok(())
}

fn evaluate(g: &Graph, store: &StateStore, x: &VertexSet) -> StateValue {
    if x.len() == 1 {
        return StateValue {
            td_star: Bound::finite(1),
            root: x.first(),
        };
    }
    let mut best = StateValue {
        td_star: Bound::INFINITE,
        root: None,
    };
    'roots: for v in x {
        let mut worst = Bound::finite(0);
        for comp in g.components(&x.without(v)) {
            match store.value(&comp) {
                Some(val) if val.td_star.is_finite() => worst = worst.max(val.td_star),
                // this root choice is infinite; skip the remaining components
                _ => continue 'roots,
            }
        }
        let cand = worst.plus_one();
        if cand < best.td_star {
            best = StateValue {
                td_star: cand,
                root: Some(v),
            };
        }
    }
    best
}

/// Fills `td*` and the chosen root for every member, one cardinality layer
/// at a time. Members within a layer are evaluated in parallel.
pub fn run_pruned(g: &Graph, store: &mut StateStore) -> Result<()> {
    check_graph(g, store)?;
    for k in 1..store.layers().len() {
        let layer = &store.layers()[k];
        let values: Vec<(usize, StateValue)> = layer
            .par_iter()
            .map(|&idx| {
                let idx = idx as usize;
                (idx, evaluate(g, store, store.member(idx)))
            })
            .collect();
        for (idx, v) in values {
            store.set_value(idx, v);
        }
    }
    store.mark_evaluated();
    Ok(())
}

/// Stored `td*` of `s`, or infinity when `s` is not a member.
pub fn td_star(store: &StateStore, s: &VertexSet) -> Result<Bound> {
    if !store.is_evaluated() {
        return Err(Error::Store("state values have not been computed".into()));
    }
    Ok(store.value(s).map_or(Bound::INFINITE, |v| v.td_star))
}

/// Rebuilds the tree behind a finite `td*` value by following stored root
/// choices. The result is checked to embed `g[s]` with height `td*(s)`.
pub fn reconstruct(g: &Graph, store: &StateStore, s: &VertexSet) -> Result<RootedTree> {
    let expected = td_star(store, s)?
        .get()
        .ok_or_else(|| Error::Store(format!("td* of {s} is infinite")))?;
    let t = build(g, store, s)?;
    if t.height() != expected || !t.embeds(g)? {
        return Err(Error::Store(format!("reconstructed tree for {s} is invalid")));
    }
    Ok(t)
}

fn build(g: &Graph, store: &StateStore, s: &VertexSet) -> Result<RootedTree> {
    let val = store
        .value(s)
        .filter(|v| v.td_star.is_finite())
        .ok_or_else(|| Error::Store(format!("no finite state for {s}")))?;
    let root = val
        .root
        .ok_or_else(|| Error::Store(format!("no root stored for {s}")))?;
    let subtrees = g
        .components(&s.without(root))
        .iter()
        .map(|c| build(g, store, c))
        .collect::<Result<Vec<_>>>()?;
    RootedTree::with_root(g.n(), root, &subtrees)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epsilon::Epsilon;
    use crate::graph::{gnp_connected, Family};
    use crate::naive::{td_naive, NaiveTable};

    fn evaluated(g: &Graph, eps: Epsilon) -> StateStore {
        let mut store = StateStore::enumerate(g, eps).unwrap();
        run_pruned(g, &mut store).unwrap();
        store
    }

    #[test]
    fn singletons_have_value_one() {
        let g = Family::Cycle(9).build().unwrap();
        let store = evaluated(&g, Epsilon::default());
        for v in 0..9 {
            assert_eq!(td_star(&store, &VertexSet::singleton(9, v)).unwrap(), Bound::finite(1));
        }
    }

    #[test]
    fn adjacent_pair_has_value_two() {
        let g = Family::Path(10).build().unwrap();
        let store = evaluated(&g, Epsilon::default());
        let pair = VertexSet::from_vertices(10, [4, 5]);
        assert_eq!(td_star(&store, &pair).unwrap(), Bound::finite(2));
    }

    #[test]
    fn path5_full_set() {
        let g = Family::Path(5).build().unwrap();
        let store = evaluated(&g, Epsilon::default());
        assert_eq!(td_star(&store, &g.vertices()).unwrap(), Bound::finite(3));
        let t = reconstruct(&g, &store, &g.vertices()).unwrap();
        assert_eq!(t.height(), 3);
        assert!(t.embeds(&g).unwrap());
    }

    #[test]
    fn non_member_is_infinite() {
        let g = Family::Path(5).build().unwrap();
        let store = evaluated(&g, Epsilon::default());
        let gap = VertexSet::from_vertices(5, [0, 2]);
        assert_eq!(td_star(&store, &gap).unwrap(), Bound::INFINITE);
    }

    #[test]
    fn unevaluated_store_is_an_error() {
        let g = Family::Path(5).build().unwrap();
        let store = StateStore::enumerate(&g, Epsilon::default()).unwrap();
        assert!(td_star(&store, &g.vertices()).is_err());
        let other = Family::Path(6).build().unwrap();
        let mut store = store;
        assert!(run_pruned(&other, &mut store).is_err());
    }

    #[test]
    fn sound_and_exact_below_threshold() {
        for seed in 0..6 {
            let (g, _) = gnp_connected(12, 0.3, 100 + seed).unwrap();
            let store = evaluated(&g, Epsilon::default());
            let t = store.threshold();
            for s in store.members_by_cardinality() {
                let mut table = NaiveTable::default();
                let exact = td_naive(&g, s, &mut table, None).unwrap();
                let star = td_star(&store, s).unwrap();
                assert!(star >= Bound::finite(exact));
                if s.len() <= t {
                    assert_eq!(star, Bound::finite(exact), "set {s}");
                    let tree = reconstruct(&g, &store, s).unwrap();
                    assert_eq!(tree.height(), exact);
                }
            }
        }
    }
}
