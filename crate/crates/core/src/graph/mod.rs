//! Immutable simple undirected graphs with bitset adjacency.

mod generate;
mod parse;

pub use generate::{gnp_connected, Family};
pub use parse::{parse_graph, serialize_graph, Format};

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            m: 0,
            adj: vec![VertexSet::empty(n); n],
        }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge {u}-{v} out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        if !self.adj[u].contains(v) {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
            self.m += 1;
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    /// Open neighborhood of `s`.
    pub fn neighborhood(&self, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.n);
        for v in s {
            out.union_with(&self.adj[v]);
        }
        out.difference_with(s);
        out
    }

    /// Vertices of `within` reachable from `start` inside `g[within]`.
    fn reach(&self, start: usize, within: &VertexSet) -> VertexSet {
        let mut comp = VertexSet::singleton(self.n, start);
        let mut frontier = comp.clone();
        loop {
            let mut next = VertexSet::empty(self.n);
            for v in &frontier {
                next.union_with(&self.adj[v]);
            }
            next.intersect_with(within);
            next.difference_with(&comp);
            if next.is_empty() {
                return comp;
            }
            comp.union_with(&next);
            frontier = next;
        }
    }

    /// Connected components of `g[s]`, ordered by smallest vertex.
    pub fn components(&self, s: &VertexSet) -> Vec<VertexSet> {
        let mut rest = s.clone();
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let comp = self.reach(v, &rest);
            rest.difference_with(&comp);
            out.push(comp);
        }
        out
    }

    /// Whether `g[s]` is connected; the empty set is not.
    pub fn is_connected(&self, s: &VertexSet) -> bool {
        match s.first() {
            None => false,
            Some(v) => self.reach(v, s) == *s,
        }
    }

    /// Induced subgraph on `s`, relabelled to `0..|s|` in increasing id
    /// order. The second component maps new ids back to original ones.
    pub fn induced(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = s.iter().collect();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(map.len());
        for (i, &v) in map.iter().enumerate() {
            for u in self.adj[v].intersection(s).iter() {
                if index[u] > i {
                    g.add_edge(i, index[u]);
                }
            }
        }
        (g, map)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let mut g = Graph::empty(n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n);
        }
        g
    }
}
