//! Solver agreement and witness properties beyond the acceptance run.

mod common;

use treedepth::full::{decompose, treedepth_with, FullConfig};
use treedepth::state_space::StateStore;
use treedepth::vertex_set::for_each_subset_of_size;
use treedepth::{naive, pruned, solve, Algorithm, Epsilon, Family, Graph, SolveConfig};

fn naive_td(g: &Graph) -> u32 {
    naive::solve_connected(g, 26).unwrap().0
}

#[test]
fn gnp_14_fifty_seeds() {
    let cfg = FullConfig::without_cutoff(Epsilon::default());
    for seed in 0..50 {
        let (g, _) = treedepth::graph::gnp_connected(14, 0.3, seed * 31).unwrap();
        let r = treedepth_with(&g, &cfg).unwrap();
        assert_eq!(r.td, naive_td(&g), "seed {seed}");
        assert!(r.witness.embeds(&g).unwrap());
    }
}

#[test]
fn epsilon_independence() {
    let graphs = common::random_graphs(30, &[12, 13, 14, 15], &[0.25, 0.4], 11);
    for (label, g) in graphs {
        let values: Vec<u32> = [(1, 10), (1, 8), (1, 7)]
            .into_iter()
            .map(|(a, b)| {
                treedepth_with(&g, &FullConfig::without_cutoff(Epsilon::new(a, b).unwrap()))
                    .unwrap()
                    .td
            })
            .collect();
        assert!(values.windows(2).all(|w| w[0] == w[1]), "{label}: {values:?}");
    }
}

#[test]
fn three_by_k_grids() {
    for cols in 1..=6 {
        let g = Family::Grid { rows: 3, cols }.build().unwrap();
        let r = treedepth_with(&g, &FullConfig::without_cutoff(Epsilon::default())).unwrap();
        assert_eq!(r.td, naive_td(&g), "3x{cols}");
    }
}

#[test]
fn pruned_never_undercounts_and_branches_never_undershoot() {
    let e = Epsilon::default();
    for (label, g) in common::random_graphs(8, &[12, 14], &[0.3], 21) {
        let exact = naive_td(&g);
        let mut store = StateStore::enumerate(&g, e).unwrap();
        pruned::run_pruned(&g, &mut store).unwrap();
        let star = pruned::td_star(&store, &g.vertices()).unwrap();
        assert!(star.get().is_none_or(|v| v >= exact), "{label}");
        let n = g.n();
        let mut y = 0;
        while e.within_branch_range(y, n) && y < 4 {
            for_each_subset_of_size(n, y, |ys| {
                let k = g.components(ys).len();
                for choice in std::iter::once(None).chain((0..k).map(Some)) {
                    if let Some(c) = decompose(&g, e, ys, choice) {
                        if let Some(out) = treedepth::full::solve_candidate(&g, &c, &store, 26).unwrap() {
                            assert!(out.bound >= exact, "{label}");
                            assert!(out.witness.embeds(&g).unwrap());
                        }
                    }
                }
            });
            y += 1;
        }
    }
}

#[test]
fn deterministic_results() {
    let (g, _) = treedepth::graph::gnp_connected(15, 0.3, 5).unwrap();
    let cfg = FullConfig::without_cutoff(Epsilon::default());
    let a = treedepth_with(&g, &cfg).unwrap();
    let b = treedepth_with(&g, &cfg).unwrap();
    assert_eq!(a.td, b.td);
    assert_eq!(a.witness, b.witness);
    assert_eq!((a.stats.states, a.stats.branches), (b.stats.states, b.stats.branches));
}

#[test]
fn disconnected_through_the_dispatcher() {
    let g = Family::Path(7)
        .build()
        .unwrap()
        .disjoint_union(&Family::Cycle(13).build().unwrap())
        .disjoint_union(&Graph::empty(1));
    for algorithm in [Algorithm::Naive, Algorithm::Full, Algorithm::Auto] {
        let s = solve(
            &g,
            &SolveConfig {
                algorithm,
                ..SolveConfig::default()
            },
        )
        .unwrap();
        assert_eq!(s.td, 5, "{algorithm}");
        assert_eq!(s.witness.trees().len(), 3);
        assert!(s.witness.embeds(&g).unwrap());
    }
}

#[test]
fn store_round_trip_preserves_values() {
    let (g, _) = treedepth::graph::gnp_connected(13, 0.3, 9).unwrap();
    let mut store = StateStore::enumerate(&g, Epsilon::default()).unwrap();
    pruned::run_pruned(&g, &mut store).unwrap();
    let mut buf = Vec::new();
    store.dump(&mut buf).unwrap();
    let back = StateStore::load(buf.as_slice()).unwrap();
    assert_eq!(back.len(), store.len());
    for s in store.members_by_cardinality() {
        assert_eq!(back.value(s), store.value(s));
    }
    assert_eq!(
        pruned::td_star(&back, &g.vertices()).unwrap(),
        pruned::td_star(&store, &g.vertices()).unwrap()
    );
}
