//! The pruned DP state space.
//!
//! A connected graph on `n` vertices and a slack `eps` define two kinds of
//! states, with `t = floor((1/2 - eps) n)`:
//!
//! * every connected vertex set of size `1..=t`;
//! * every connected component of `G - X` for every `X` with `|X| <= t`.
//!
//! Members are kept in a binary trie over their characteristic vectors
//! (highest vertex first) so membership costs one `n`-step walk, plus a
//! per-cardinality index for the bottom-up evaluation order.

use std::io::{Read, Write};

use crate::epsilon::{Bound, Epsilon};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::{binomial, for_each_subset_of_size, VertexSet};

const NO_CHILD: u32 = u32::MAX;
const MAGIC: &[u8; 4] = b"TDSS";

/// Value computed for one state by the pruned recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StateValue {
    pub td_star: Bound,
    pub root: Option<usize>,
}

impl StateValue {
    const UNSET: StateValue = StateValue {
        td_star: Bound::INFINITE,
        root: None,
    };
}

#[derive(Clone, Debug)]
pub struct StateStore {
    n: usize,
    epsilon: Epsilon,
    // Internal trie nodes; at the last level a child slot holds a member index.
    trie: Vec<[u32; 2]>,
    members: Vec<VertexSet>,
    values: Vec<StateValue>,
    layers: Vec<Vec<u32>>,
    evaluated: bool,
}

impl StateStore {
    fn empty(n: usize, epsilon: Epsilon) -> Self {
        StateStore {
            n,
            epsilon,
            trie: vec![[NO_CHILD; 2]],
            members: Vec::new(),
            values: Vec::new(),
            layers: Vec::new(),
            evaluated: false,
        }
    }

    /// Enumerates both kinds of states of a connected graph.
    pub fn enumerate(g: &Graph, epsilon: Epsilon) -> Result<Self> {
        let n = g.n();
        if n == 0 || !g.is_connected(&g.vertices()) {
            return Err(Error::Disconnected);
        }
        let t = epsilon.small_threshold(n);
        let mut store = StateStore::empty(n, epsilon);

        for k in 1..=t {
            for_each_subset_of_size(n, k, |s| {
                if g.is_connected(s) {
                    store.insert(s);
                }
            });
        }
        let all = g.vertices();
        for k in 0..=t {
            for_each_subset_of_size(n, k, |x| {
                for comp in g.components(&all.difference(x)) {
                    store.insert(&comp);
                }
            });
        }
        store.finish_layers();

        let bound = state_bound(n, epsilon);
        if store.len() as u128 > bound {
            return Err(Error::Store(format!(
                "{} states exceed the enumeration bound {bound}",
                store.len()
            )));
        }
        Ok(store)
    }

    fn insert(&mut self, s: &VertexSet) -> usize {
        let mut node = 0usize;
        for v in (1..self.n).rev() {
            let bit = s.contains(v) as usize;
            let next = self.trie[node][bit];
            node = if next == NO_CHILD {
                self.trie.push([NO_CHILD; 2]);
                let id = self.trie.len() - 1;
                self.trie[node][bit] = id as u32;
                id
            } else {
                next as usize
            };
        }
        let bit = s.contains(0) as usize;
        match self.trie[node][bit] {
            NO_CHILD => {
                let idx = self.members.len();
                self.trie[node][bit] = idx as u32;
                self.members.push(s.clone());
                self.values.push(StateValue::UNSET);
                idx
            }
            idx => idx as usize,
        }
    }

    /// Index of `s` in the store, found by walking the trie.
    pub fn index_of(&self, s: &VertexSet) -> Option<usize> {
        let mut node = 0usize;
        for v in (0..self.n).rev() {
            let next = self.trie[node][s.contains(v) as usize];
            if next == NO_CHILD {
                return None;
            }
            node = next as usize;
        }
        Some(node)
    }

    pub fn contains(&self, s: &VertexSet) -> bool {
        !s.is_empty() && self.index_of(s).is_some()
    }

    fn finish_layers(&mut self) {
        let mut layers = vec![Vec::new(); self.n + 1];
        for (i, m) in self.members.iter().enumerate() {
            layers[m.len()].push(i as u32);
        }
        for layer in &mut layers {
            layer.sort_by(|&a, &b| self.members[a as usize].cmp(&self.members[b as usize]));
        }
        self.layers = layers;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn epsilon(&self) -> Epsilon {
        self.epsilon
    }

    /// `floor((1/2 - eps) n)`: sets up to this size are exact after evaluation.
    pub fn threshold(&self) -> usize {
        self.epsilon.small_threshold(self.n)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member(&self, idx: usize) -> &VertexSet {
        &self.members[idx]
    }

    /// Member indices grouped by cardinality; `layers()[k]` holds size `k`.
    pub fn layers(&self) -> &[Vec<u32>] {
        &self.layers
    }

    /// Every member once, by nondecreasing cardinality, ties by bit pattern.
    pub fn members_by_cardinality(&self) -> impl Iterator<Item = &VertexSet> + '_ {
        self.layers.iter().flatten().map(move |&i| &self.members[i as usize])
    }

    pub fn value_at(&self, idx: usize) -> StateValue {
        self.values[idx]
    }

    pub fn value(&self, s: &VertexSet) -> Option<StateValue> {
        self.index_of(s).map(|i| self.values[i])
    }

    pub(crate) fn set_value(&mut self, idx: usize, v: StateValue) {
        self.values[idx] = v;
    }

    pub fn is_evaluated(&self) -> bool {
        self.evaluated
    }

    pub(crate) fn mark_evaluated(&mut self) {
        self.evaluated = true;
    }

    /// Binary dump: magic, `n`, eps, evaluated flag, count, then per member
    /// its key words, `td_star` (`u32::MAX` for infinity) and root
    /// (`u32::MAX` for none). Little endian throughout.
    pub fn dump<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&(self.n as u32).to_le_bytes())?;
        w.write_all(&self.epsilon.num().to_le_bytes())?;
        w.write_all(&self.epsilon.den().to_le_bytes())?;
        w.write_all(&[self.evaluated as u8])?;
        w.write_all(&(self.members.len() as u64).to_le_bytes())?;
        for i in self.layers.iter().flatten().map(|&i| i as usize) {
            for word in self.members[i].words() {
                w.write_all(&word.to_le_bytes())?;
            }
            let v = self.values[i];
            w.write_all(&v.td_star.raw().to_le_bytes())?;
            w.write_all(&v.root.map_or(u32::MAX, |r| r as u32).to_le_bytes())?;
        }
        Ok(())
    }

    pub fn load<R: Read>(mut r: R) -> Result<Self> {
        fn take<const N: usize, R: Read>(r: &mut R) -> Result<[u8; N]> {
            let mut buf = [0u8; N];
            r.read_exact(&mut buf)?;
            Ok(buf)
        }
        if &take::<4, _>(&mut r)? != MAGIC {
            return Err(Error::Store("bad magic in state dump".into()));
        }
        let n = u32::from_le_bytes(take(&mut r)?) as usize;
        let num = u64::from_le_bytes(take(&mut r)?);
        let den = u64::from_le_bytes(take(&mut r)?);
        let evaluated = take::<1, _>(&mut r)?[0] != 0;
        let count = u64::from_le_bytes(take(&mut r)?) as usize;
        let words = VertexSet::empty(n).words().len();
        let mut store = StateStore::empty(n, Epsilon::new(num, den)?);
        let mut key = vec![0u64; words];
        for _ in 0..count {
            for w in key.iter_mut() {
                *w = u64::from_le_bytes(take(&mut r)?);
            }
            let set = VertexSet::from_words(n, &key);
            let td = Bound::from_raw(u32::from_le_bytes(take(&mut r)?));
            let root = u32::from_le_bytes(take(&mut r)?);
            let idx = store.insert(&set);
            store.values[idx] = StateValue {
                td_star: td,
                root: (root != u32::MAX).then_some(root as usize),
            };
        }
        store.finish_layers();
        store.evaluated = evaluated;
        Ok(store)
    }
}

/// `(n + 1)^2 * C(n, floor((1/2 - eps) n))`, the size bound asserted after
/// every enumeration.
pub fn state_bound(n: usize, epsilon: Epsilon) -> u128 {
    let c = binomial(n, epsilon.small_threshold(n));
    let np1 = n as u128 + 1;
    np1 * np1 * c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gnp_connected, Family};
    use std::collections::BTreeSet;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied())
    }

    #[test]
    fn path5_membership() {
        let g = Family::Path(5).build().unwrap();
        let store = StateStore::enumerate(&g, Epsilon::default()).unwrap();
        assert_eq!(store.threshold(), 2);
        assert!(store.contains(&set(5, &[3, 4])));
        assert!(store.contains(&set(5, &[1, 2, 3, 4])));
        assert!(!store.contains(&set(5, &[0, 2])));
        assert!(store.contains(&g.vertices()));
        assert!(!store.contains(&VertexSet::empty(5)));
        for v in 0..5 {
            assert!(store.contains(&set(5, &[v])));
        }
        // {1,2,3} is neither small nor a component of P5 minus at most 2 vertices
        // ... except X = {0, 4}.
        assert!(store.contains(&set(5, &[1, 2, 3])));
    }

    #[test]
    fn ordering_by_cardinality() {
        let g = Family::Path(3).build().unwrap();
        let store = StateStore::enumerate(&g, Epsilon::default()).unwrap();
        let members: Vec<_> = store.members_by_cardinality().cloned().collect();
        assert_eq!(members.first().unwrap().len(), 1);
        assert_eq!(members.last().unwrap(), &g.vertices());
        assert!(members.windows(2).all(|w| (w[0].len(), &w[0]) < (w[1].len(), &w[1])));
    }

    #[test]
    fn disconnected_graph_rejected() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert!(matches!(
            StateStore::enumerate(&g, Epsilon::default()),
            Err(Error::Disconnected)
        ));
    }

    /// Direct double loop over all subsets, no trie.
    fn reference_states(g: &Graph, eps: Epsilon) -> BTreeSet<VertexSet> {
        let n = g.n();
        let t = eps.small_threshold(n);
        let mut out = BTreeSet::new();
        for mask in 1u64..(1 << n) {
            let s = VertexSet::from_words(n, &[mask]);
            if s.len() <= t && g.is_connected(&s) {
                out.insert(s);
            }
        }
        for mask in 0u64..(1 << n) {
            let x = VertexSet::from_words(n, &[mask]);
            if x.len() <= t {
                for c in g.components(&g.vertices().difference(&x)) {
                    out.insert(c);
                }
            }
        }
        out
    }

    #[test]
    fn matches_reference_enumeration() {
        let eps_list = [
            Epsilon::default(),
            Epsilon::new(1, 8).unwrap(),
            Epsilon::new(1, 7).unwrap(),
        ];
        for seed in 0..8 {
            for (i, n) in [6usize, 9, 12, 14].into_iter().enumerate() {
                let (g, _) = gnp_connected(n, 0.3, seed * 10 + i as u64).unwrap();
                for eps in eps_list {
                    let store = StateStore::enumerate(&g, eps).unwrap();
                    let got: BTreeSet<_> = store.members_by_cardinality().cloned().collect();
                    assert_eq!(got.len(), store.len());
                    assert_eq!(got, reference_states(&g, eps));
                    for m in &got {
                        assert!(g.is_connected(m));
                        assert!(store.contains(m));
                    }
                }
            }
        }
    }

    #[test]
    fn dump_load_roundtrip() {
        let (g, _) = gnp_connected(10, 0.3, 3).unwrap();
        let mut store = StateStore::enumerate(&g, Epsilon::new(1, 8).unwrap()).unwrap();
        store.set_value(
            0,
            StateValue {
                td_star: Bound::finite(3),
                root: Some(2),
            },
        );
        let mut buf = Vec::new();
        store.dump(&mut buf).unwrap();
        let back = StateStore::load(buf.as_slice()).unwrap();
        assert_eq!(back.len(), store.len());
        assert_eq!(back.epsilon(), store.epsilon());
        for m in store.members_by_cardinality() {
            assert_eq!(back.value(m), store.value(m));
        }
        assert!(StateStore::load(&b"XXXX"[..]).is_err());
    }
}
