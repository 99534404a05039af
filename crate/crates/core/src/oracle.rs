//! Brute-force references for tiny inputs.
//!
//! Nothing here shares code with the solvers beyond the graph and tree
//! types: trees are enumerated as raw parent functions and embedding is
//! checked with plain ancestor masks.

use std::collections::{HashMap, HashSet};

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::moid::{MoidInstance, MoidSolution};
use crate::tree::{LevelSequence, RootedTree};
use crate::vertex_set::VertexSet;

pub const MAX_TREE_ENUM_N: usize = 8;
pub const MAX_PROPERTY_CHECK_N: usize = 7;
pub const MAX_MOID_Z: usize = 8;

#[derive(Clone, Debug)]
pub struct MinimalTreeReport {
    pub graph: Graph,
    pub minimal_trees: Vec<RootedTree>,
    pub td: u32,
    /// Number of embeddable trees seen during enumeration.
    pub embeddable: usize,
}

fn cap(what: &'static str, got: usize, limit: usize) -> Result<()> {
    if got > limit {
        return Err(Error::CapExceeded {
            what,
            got,
            cap: limit,
            hint: "",
        });
    }
    Ok(())
}

/// Ancestor masks of a parent function on `verts`, or `None` if it has a cycle.
fn ancestor_masks(parent: &[usize], verts: &[usize], n: usize) -> Option<Vec<u64>> {
    let mut anc = vec![0u64; n];
    for &v in verts {
        let mut mask = 1u64 << v;
        let mut cur = v;
        let mut steps = 0;
        while parent[cur] != usize::MAX {
            cur = parent[cur];
            mask |= 1 << cur;
            steps += 1;
            if steps > verts.len() {
                return None;
            }
        }
        anc[v] = mask;
    }
    Some(anc)
}

/// Every rooted tree on `s` whose closure contains `g[s]`, in a fixed order
/// (by root, then by parent function in mixed-radix order).
fn embeddable_trees_on(g: &Graph, s: &VertexSet) -> Vec<RootedTree> {
    let n = g.n();
    let verts: Vec<usize> = s.iter().collect();
    let edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| s.contains(u) && s.contains(v))
        .collect();
    let per_root: Vec<Vec<RootedTree>> = verts
        .par_iter()
        .map(|&root| {
            let others: Vec<usize> = verts.iter().copied().filter(|&v| v != root).collect();
            // choices for each non-root vertex: any other vertex of s
            let choices: Vec<Vec<usize>> = others
                .iter()
                .map(|&v| verts.iter().copied().filter(|&u| u != v).collect())
                .collect();
            let mut out = Vec::new();
            let mut digit = vec![0usize; others.len()];
            let mut parent = vec![usize::MAX; n];
            loop {
                for (i, &v) in others.iter().enumerate() {
                    parent[v] = choices[i][digit[i]];
                }
                if let Some(anc) = ancestor_masks(&parent, &verts, n) {
                    let ok = edges.iter().all(|&(u, v)| anc[u] >> v & 1 == 1 || anc[v] >> u & 1 == 1);
                    if ok {
                        let pa = parent.iter().map(|&p| (p != usize::MAX).then_some(p)).collect();
                        out.push(RootedTree::from_parents(pa, s.clone()).expect("acyclic parent function"));
                    }
                }
                // next mixed-radix counter value
                let mut i = 0;
                loop {
                    if i == digit.len() {
                        return out;
                    }
                    digit[i] += 1;
                    if digit[i] < choices[i].len() {
                        break;
                    }
                    digit[i] = 0;
                    i += 1;
                }
            }
        })
        .collect();
    per_root.into_iter().flatten().collect()
}

/// All rooted labelled trees on `V(g)` whose closure contains `g`.
pub fn enumerate_embeddable_trees(g: &Graph) -> Result<impl Iterator<Item = RootedTree>> {
    cap("oracle tree enumeration vertex count", g.n(), MAX_TREE_ENUM_N)?;
    if !g.is_connected(&g.vertices()) {
        return Err(Error::Disconnected);
    }
    Ok(embeddable_trees_on(g, &g.vertices()).into_iter())
}

fn minimal_among(trees: Vec<RootedTree>) -> (Vec<RootedTree>, u32) {
    let seqs: Vec<LevelSequence> = trees.iter().map(RootedTree::level_sequence).collect();
    let distinct: Vec<&LevelSequence> = seqs.iter().unique().collect();
    let minimal: HashSet<&LevelSequence> = distinct
        .iter()
        .copied()
        .filter(|s| !distinct.iter().any(|o| o.prec(s)))
        .collect();
    let td = trees.iter().map(RootedTree::height).min().unwrap_or(0);
    let min_trees = trees
        .into_iter()
        .zip(&seqs)
        .filter(|(_, s)| minimal.contains(s))
        .map(|(t, _)| t)
        .collect();
    (min_trees, td)
}

/// Minimal trees of a connected graph by exhaustive filtering.
pub fn minimal_trees(g: &Graph) -> Result<MinimalTreeReport> {
    let trees: Vec<RootedTree> = enumerate_embeddable_trees(g)?.collect();
    let embeddable = trees.len();
    let (minimal_trees, td) = minimal_among(trees);
    // a tree taller than td always has a strictly shorter, hence smaller, rival
    if let Some(t) = minimal_trees.iter().find(|t| t.height() != td) {
        return Err(Error::InvalidTree(format!(
            "minimal tree of height {} but tree-depth {td}",
            t.height()
        )));
    }
    Ok(MinimalTreeReport {
        graph: g.clone(),
        minimal_trees,
        td,
        embeddable,
    })
}

/// Level sequences of all trees embedding `g[s]`, cached by vertex set.
struct SequenceCache<'g> {
    g: &'g Graph,
    cache: HashMap<VertexSet, HashSet<LevelSequence>>,
}

impl<'g> SequenceCache<'g> {
    fn new(g: &'g Graph) -> Self {
        SequenceCache {
            g,
            cache: HashMap::new(),
        }
    }

    fn sequences(&mut self, s: &VertexSet) -> &HashSet<LevelSequence> {
        let g = self.g;
        self.cache.entry(s.clone()).or_insert_with(|| {
            embeddable_trees_on(g, s)
                .iter()
                .map(RootedTree::level_sequence)
                .collect()
        })
    }

    /// No tree on the same vertex set that embeds `g[V(t)]` precedes `t`.
    fn is_minimal(&mut self, t: &RootedTree) -> bool {
        let seq = t.level_sequence();
        !self.sequences(t.vertices()).iter().any(|o| o.prec(&seq))
    }
}

/// Checks the structural claims on minimal trees for every minimal tree of
/// `g` and every vertex `v`:
///
/// 1. `g[V(T_v)]` is connected;
/// 2. `T_v` is minimal for `g[V(T_v)]`;
/// 3. if `v'` is the branching point of `T_v` closest to `v`, every child
///    subtree of `v'` contains a neighbor of `v`.
///
/// Returns human-readable violations; an empty list means all hold.
pub fn check_minimal_tree_properties(g: &Graph) -> Result<Vec<String>> {
    cap("oracle property check vertex count", g.n(), MAX_PROPERTY_CHECK_N)?;
    let report = minimal_trees(g)?;
    let mut cache = SequenceCache::new(g);
    let mut violations = Vec::new();
    for (ti, t) in report.minimal_trees.iter().enumerate() {
        for v in t.vertices() {
            let (sub, verts) = t.subtree(v)?;
            if !g.is_connected(&verts) {
                violations.push(format!("tree {ti}, vertex {v}: G[V(T_v)] = {verts} is disconnected"));
            }
            if !cache.is_minimal(&sub) {
                violations.push(format!("tree {ti}, vertex {v}: T_v is not minimal for G[{verts}]"));
            }
            let mut branch = v;
            while t.children(branch).len() == 1 {
                branch = t.children(branch)[0];
            }
            if t.children(branch).len() >= 2 {
                for &u in t.children(branch) {
                    let (_, below) = t.subtree(u)?;
                    if !g.neighbors(v).intersects(&below) {
                        violations.push(format!(
                            "tree {ti}, vertex {v}: branching point {branch} has child {u} \
                             whose subtree {below} misses N(v)"
                        ));
                    }
                }
            }
        }
    }
    Ok(violations)
}

/// Replaces `T_v` inside `t` by `replacement` (same vertex set), hanging it
/// from the old parent of `v`.
fn splice(t: &RootedTree, v: usize, replacement: &RootedTree) -> Result<RootedTree> {
    let mut parent = t.parents().to_vec();
    for u in replacement.vertices() {
        parent[u] = replacement.parent(u);
    }
    parent[replacement.root()] = t.parent(v);
    RootedTree::from_parents(parent, t.vertices().clone())
}

/// Spot-check of subtree replacement: for embeddable trees `T1` of `g` (up to
/// `max_trees` of them), every vertex `v` and every tree `T*` embedding
/// `g[V(T1_v)]` with `T* < T1_v`, the spliced tree must precede `T1`.
pub fn check_subtree_replacement(g: &Graph, max_trees: usize) -> Result<Vec<String>> {
    cap("oracle replacement check vertex count", g.n(), 6)?;
    let mut rivals: HashMap<VertexSet, Vec<RootedTree>> = HashMap::new();
    let mut violations = Vec::new();
    for t1 in enumerate_embeddable_trees(g)?.take(max_trees) {
        let seq1 = t1.level_sequence();
        for v in t1.vertices() {
            let (sub, verts) = t1.subtree(v)?;
            let sub_seq = sub.level_sequence();
            let cands = rivals
                .entry(verts.clone())
                .or_insert_with(|| embeddable_trees_on(g, &verts));
            for star in cands.iter().filter(|c| c.level_sequence().prec(&sub_seq)) {
                let t2 = splice(&t1, v, star)?;
                if !t2.level_sequence().prec(&seq1) {
                    violations.push(format!("replacing T_{v} did not decrease the tree"));
                }
            }
        }
    }
    Ok(violations)
}

/// Optimal ordering by trying all `|Z|!` bijections; among minimizers the
/// lexicographically smallest position vector wins.
pub fn exhaustive_moid(inst: &MoidInstance) -> Result<MoidSolution> {
    let k = inst.len();
    cap("exhaustive ordering size", k, MAX_MOID_Z)?;
    let mut best: Option<MoidSolution> = None;
    for perm in (1..=k).permutations(k) {
        let value = inst
            .constraints()
            .iter()
            .map(|c| c.members.iter().map(|&i| perm[i]).max().unwrap_or(0) as u32 + c.delay)
            .fold(k as u32, u32::max);
        if best.as_ref().is_none_or(|b| value < b.mu) {
            best = Some(MoidSolution { sigma: perm, mu: value });
        }
    }
    Ok(best.unwrap_or(MoidSolution { sigma: vec![], mu: 0 }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;
    use crate::moid::Constraint;

    #[test]
    fn tiny_counts() {
        assert_eq!(enumerate_embeddable_trees(&Graph::empty(1)).unwrap().count(), 1);
        let k2 = Family::Complete(2).build().unwrap();
        assert_eq!(enumerate_embeddable_trees(&k2).unwrap().count(), 2);
    }

    /// The nine parent functions with one root on 3 vertices, written out.
    #[test]
    fn p3_matches_hand_enumeration() {
        let p3 = Family::Path(3).build().unwrap();
        let mut expected = 0;
        for root in 0..3 {
            let others: Vec<usize> = (0..3).filter(|&v| v != root).collect();
            for pa in 0..3 {
                for pb in 0..3 {
                    let (a, b) = (others[0], others[1]);
                    if pa == a || pb == b {
                        continue;
                    }
                    let mut parent = vec![None; 3];
                    parent[a] = Some(pa);
                    parent[b] = Some(pb);
                    if let Ok(t) = RootedTree::from_parents(parent, VertexSet::full(3)) {
                        if t.embeds(&p3).unwrap() {
                            expected += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(enumerate_embeddable_trees(&p3).unwrap().count(), expected);
        // 6 paths plus the tree rooted at the middle vertex
        assert_eq!(expected, 7);
    }

    #[test]
    fn caps_are_errors() {
        let big = Family::Path(9).build().unwrap();
        assert!(matches!(
            enumerate_embeddable_trees(&big),
            Err(Error::CapExceeded { .. })
        ));
        let p8 = Family::Path(8).build().unwrap();
        assert!(matches!(
            check_minimal_tree_properties(&p8),
            Err(Error::CapExceeded { .. })
        ));
        let nine = MoidInstance::new((0..9).collect(), vec![]).unwrap();
        assert!(exhaustive_moid(&nine).is_err());
    }

    #[test]
    fn minimal_tree_examples() {
        let k3 = minimal_trees(&Family::Complete(3).build().unwrap()).unwrap();
        assert_eq!(k3.td, 3);
        assert_eq!(k3.minimal_trees.len(), 6);
        assert!(k3.minimal_trees.iter().all(|t| t.level_sequence().0 == vec![1, 1, 1]));

        let star = minimal_trees(&Family::Star(3).build().unwrap()).unwrap();
        assert_eq!(star.td, 2);
        assert_eq!(star.minimal_trees.len(), 1);
        assert_eq!(star.minimal_trees[0].root(), 0);

        assert_eq!(minimal_trees(&Family::Path(4).build().unwrap()).unwrap().td, 3);
    }

    #[test]
    fn structural_claims_hold() {
        for g in [
            Family::Cycle(5).build().unwrap(),
            Family::Complete(4).build().unwrap(),
            crate::graph::gnp_connected(6, 0.5, 1).unwrap().0,
        ] {
            assert!(check_minimal_tree_properties(&g).unwrap().is_empty());
        }
    }

    #[test]
    fn exhaustive_moid_examples() {
        let one = MoidInstance::new(
            vec![0],
            vec![Constraint {
                members: vec![0],
                delay: 1,
            }],
        )
        .unwrap();
        assert_eq!(exhaustive_moid(&one).unwrap().mu, 2);
        let three = MoidInstance::new(
            vec![0, 1, 2],
            vec![
                Constraint {
                    members: vec![0, 1],
                    delay: 2,
                },
                Constraint {
                    members: vec![2],
                    delay: 1,
                },
            ],
        )
        .unwrap();
        let sol = exhaustive_moid(&three).unwrap();
        assert_eq!(sol.mu, 4);
        // identity already attains 4 and is the first permutation tried
        assert_eq!(sol.sigma, vec![1, 2, 3]);
        let free = MoidInstance::new((0..5).collect(), vec![]).unwrap();
        assert_eq!(exhaustive_moid(&free).unwrap().mu, 5);
    }
}
