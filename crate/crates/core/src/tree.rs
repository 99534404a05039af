//! Rooted trees and forests used as elimination trees.
//!
//! Trees always carry the original vertex ids of the graph they were built
//! for: a tree over a vertex subset `S` of a graph on `n` vertices still has
//! `n()` equal to `n`, and every vertex outside `S` is simply absent.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    root: usize,
    parent: Vec<Option<usize>>,
    vertices: VertexSet,
    heights: Vec<u32>,
    children: Vec<Vec<usize>>,
}

impl RootedTree {
    pub fn single(n: usize, v: usize) -> Self {
        let mut parent = vec![None; n];
        parent[v] = None;
        Self::build(v, parent, VertexSet::singleton(n, v)).expect("a single vertex is always a tree")
    }

    /// Path-shaped tree; `order[0]` is the root.
    pub fn path(n: usize, order: &[usize]) -> Result<Self> {
        let (&root, _) = order
            .split_first()
            .ok_or_else(|| Error::InvalidTree("empty path".into()))?;
        let mut parent = vec![None; n];
        for w in order.windows(2) {
            parent[w[1]] = Some(w[0]);
        }
        Self::build(root, parent, VertexSet::from_vertices(n, order.iter().copied()))
    }

    /// Validates a parent array restricted to `vertices`. Exactly one member
    /// must have no parent; every other member's parent must be a member, and
    /// parent pointers must be acyclic.
    pub fn from_parents(parent: Vec<Option<usize>>, vertices: VertexSet) -> Result<Self> {
        let n = parent.len();
        let mut root = None;
        for v in &vertices {
            if v >= n {
                return Err(Error::InvalidTree(format!("vertex {v} out of range")));
            }
            match parent[v] {
                None if root.is_some() => return Err(Error::InvalidTree("more than one root".into())),
                None => root = Some(v),
                Some(p) if !vertices.contains(p) || p == v => {
                    return Err(Error::InvalidTree(format!("vertex {v} has invalid parent {p}")))
                }
                Some(_) => {}
            }
        }
        let root = root.ok_or_else(|| Error::InvalidTree("no root".into()))?;
        let mut parent = parent;
        for (v, p) in parent.iter_mut().enumerate() {
            if !vertices.contains(v) {
                *p = None;
            }
        }
        Self::build(root, parent, vertices)
    }

    fn build(root: usize, parent: Vec<Option<usize>>, vertices: VertexSet) -> Result<Self> {
        let n = parent.len();
        let mut children = vec![Vec::new(); n];
        for v in &vertices {
            if let Some(p) = parent[v] {
                children[p].push(v);
            }
        }
        // BFS from the root assigns heights; anything unreached sits on a cycle.
        let mut heights = vec![0u32; n];
        heights[root] = 1;
        let mut queue = vec![root];
        let mut reached = 1;
        while let Some(v) = queue.pop() {
            for &c in &children[v] {
                heights[c] = heights[v] + 1;
                reached += 1;
                queue.push(c);
            }
        }
        if reached != vertices.len() {
            return Err(Error::InvalidTree("parent pointers contain a cycle".into()));
        }
        Ok(RootedTree {
            root,
            parent,
            vertices,
            heights,
            children,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    pub fn root(&self) -> usize {
        self.root
    }

    #[inline]
    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    #[inline]
    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Number of vertices on the path from the root to `v`; the root has
    /// height 1. Returns 0 for vertices outside the tree.
    #[inline]
    pub fn height_of(&self, v: usize) -> u32 {
        self.heights[v]
    }

    pub fn height(&self) -> u32 {
        self.vertices.iter().map(|v| self.heights[v]).max().unwrap_or(0)
    }

    /// Whether `a` is an ancestor of `b` (a vertex is its own ancestor).
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        if !self.vertices.contains(a) || !self.vertices.contains(b) {
            return false;
        }
        let mut cur = b;
        while self.heights[cur] > self.heights[a] {
            cur = self.parent[cur].expect("non-root vertex has a parent");
        }
        cur == a
    }

    fn ancestor_sets(&self) -> Vec<VertexSet> {
        let n = self.n();
        let mut anc = vec![VertexSet::empty(n); n];
        let mut order: Vec<usize> = self.vertices.iter().collect();
        order.sort_by_key(|&v| self.heights[v]);
        for v in order {
            let mut s = match self.parent[v] {
                Some(p) => anc[p].clone(),
                None => VertexSet::empty(n),
            };
            s.insert(v);
            anc[v] = s;
        }
        anc
    }

    /// Graph on the same `n` vertices with an edge between every vertex and
    /// each of its strict ancestors.
    pub fn closure(&self) -> Graph {
        let mut g = Graph::empty(self.n());
        for (v, a) in self.ancestor_sets().iter().enumerate() {
            for u in a.iter().filter(|&u| u != v) {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// First edge of `g[V(T)]` that does not join an ancestor-descendant
    /// pair, if any.
    pub fn first_violation(&self, g: &Graph) -> Result<Option<(usize, usize)>> {
        if g.n() != self.n() {
            return Err(Error::SizeMismatch {
                graph: g.n(),
                tree: self.n(),
            });
        }
        let anc = self.ancestor_sets();
        for u in &self.vertices {
            for v in g.neighbors(u).intersection(&self.vertices).iter() {
                if u < v && !anc[v].contains(u) && !anc[u].contains(v) {
                    return Ok(Some((u, v)));
                }
            }
        }
        Ok(None)
    }

    /// Whether `g[V(T)]` is a subgraph of the closure of this tree.
    pub fn embeds(&self, g: &Graph) -> Result<bool> {
        Ok(self.first_violation(g)?.is_none())
    }

    pub fn level_sequence(&self) -> LevelSequence {
        let mut counts = vec![0usize; self.height() as usize];
        for v in &self.vertices {
            counts[self.heights[v] as usize - 1] += 1;
        }
        LevelSequence(counts)
    }

    /// The maximal subtree rooted at `v`, with its vertex set.
    pub fn subtree(&self, v: usize) -> Result<(RootedTree, VertexSet)> {
        if !self.vertices.contains(v) {
            return Err(Error::InvalidTree(format!("vertex {v} not in tree")));
        }
        let n = self.n();
        let mut verts = VertexSet::singleton(n, v);
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for &c in &self.children[x] {
                verts.insert(c);
                stack.push(c);
            }
        }
        let mut parent = self.parent.clone();
        parent[v] = None;
        let t = RootedTree::from_parents(parent, verts.clone())?;
        Ok((t, verts))
    }

    /// Path over `z_order` (first element is the root) with each attachment's
    /// root hung below `z_order[index - 1]`. The path and the attachments
    /// must partition `0..n`.
    pub fn assemble(n: usize, z_order: &[usize], attachments: &[(RootedTree, usize)]) -> Result<Self> {
        if z_order.is_empty() {
            return Err(Error::Partition("empty path".into()));
        }
        let mut parent = vec![None; n];
        let mut covered = VertexSet::empty(n);
        for (i, &z) in z_order.iter().enumerate() {
            if z >= n || covered.contains(z) {
                return Err(Error::Partition(format!("path vertex {z} repeated or out of range")));
            }
            covered.insert(z);
            if i > 0 {
                parent[z] = Some(z_order[i - 1]);
            }
        }
        for (t, index) in attachments {
            if t.n() != n {
                return Err(Error::Partition("attachment built for a different n".into()));
            }
            if *index == 0 || *index > z_order.len() {
                return Err(Error::Partition(format!(
                    "attach index {index} outside 1..={}",
                    z_order.len()
                )));
            }
            if covered.intersects(t.vertices()) {
                return Err(Error::Partition("attachments overlap".into()));
            }
            covered.union_with(t.vertices());
            for v in t.vertices() {
                parent[v] = t.parent(v);
            }
            parent[t.root()] = Some(z_order[index - 1]);
        }
        if covered.len() != n {
            return Err(Error::Partition(format!("{} of {n} vertices covered", covered.len())));
        }
        RootedTree::from_parents(parent, covered)
    }

    /// Tree rooted at `root` whose root children are the roots of `subtrees`.
    pub fn with_root(n: usize, root: usize, subtrees: &[RootedTree]) -> Result<Self> {
        let mut parent = vec![None; n];
        let mut verts = VertexSet::singleton(n, root);
        for t in subtrees {
            if verts.intersects(t.vertices()) {
                return Err(Error::Partition("subtrees overlap".into()));
            }
            verts.union_with(t.vertices());
            for v in t.vertices() {
                parent[v] = t.parent(v);
            }
            parent[t.root()] = Some(root);
        }
        RootedTree::from_parents(parent, verts)
    }
}

/// Number of vertices at each height, `counts[i]` being height `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LevelSequence(pub Vec<usize>);

impl LevelSequence {
    /// Strict order on trees: `self` precedes `other` iff at some height it
    /// has fewer vertices and agrees at every greater height.
    pub fn prec(&self, other: &LevelSequence) -> bool {
        let len = self.0.len().max(other.0.len());
        for i in (0..len).rev() {
            let a = self.0.get(i).copied().unwrap_or(0);
            let b = other.0.get(i).copied().unwrap_or(0);
            if a != b {
                return a < b;
            }
        }
        false
    }

    pub fn height(&self) -> usize {
        self.0.len()
    }
}

/// Rooted forest on `0..n`, one tree per connected component of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forest {
    n: usize,
    trees: Vec<RootedTree>,
}

impl Forest {
    pub fn new(n: usize, trees: Vec<RootedTree>) -> Result<Self> {
        let mut covered = VertexSet::empty(n);
        for t in &trees {
            if t.n() != n || covered.intersects(t.vertices()) {
                return Err(Error::Partition("forest trees overlap".into()));
            }
            covered.union_with(t.vertices());
        }
        if covered.len() != n {
            return Err(Error::Partition("forest does not cover every vertex".into()));
        }
        Ok(Forest { n, trees })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn trees(&self) -> &[RootedTree] {
        &self.trees
    }

    pub fn height(&self) -> u32 {
        self.trees.iter().map(RootedTree::height).max().unwrap_or(0)
    }

    pub fn parent_array(&self) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.n];
        for t in &self.trees {
            for v in t.vertices() {
                parent[v] = t.parent(v);
            }
        }
        parent
    }

    /// Splits a parent array (`None` marks roots) into its trees.
    pub fn from_parent_array(parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        if let Some((v, p)) = parent
            .iter()
            .enumerate()
            .find_map(|(v, p)| p.filter(|&p| p >= n || p == v).map(|p| (v, p)))
        {
            return Err(Error::InvalidTree(format!("vertex {v} has invalid parent {p}")));
        }
        let mut top = vec![usize::MAX; n];
        for (v, t) in top.iter_mut().enumerate() {
            let mut cur = v;
            let mut steps = 0;
            while let Some(p) = parent[cur] {
                cur = p;
                steps += 1;
                if steps > n {
                    return Err(Error::InvalidTree("parent pointers contain a cycle".into()));
                }
            }
            *t = cur;
        }
        let mut trees = Vec::new();
        for r in (0..n).filter(|&r| parent[r].is_none()) {
            let verts = VertexSet::from_vertices(n, (0..n).filter(|&v| top[v] == r));
            trees.push(RootedTree::from_parents(parent.clone(), verts)?);
        }
        Forest::new(n, trees)
    }

    pub fn first_violation(&self, g: &Graph) -> Result<Option<(usize, usize)>> {
        if g.n() != self.n {
            return Err(Error::SizeMismatch {
                graph: g.n(),
                tree: self.n,
            });
        }
        let mut owner = vec![usize::MAX; self.n];
        for (i, t) in self.trees.iter().enumerate() {
            for v in t.vertices() {
                owner[v] = i;
            }
        }
        for (u, v) in g.edges() {
            if owner[u] != owner[v] {
                return Ok(Some((u, v)));
            }
        }
        for t in &self.trees {
            if let Some(e) = t.first_violation(g)? {
                return Ok(Some(e));
            }
        }
        Ok(None)
    }

    pub fn embeds(&self, g: &Graph) -> Result<bool> {
        Ok(self.first_violation(g)?.is_none())
    }

    /// `v parent` per line, roots have parent `-1`.
    pub fn to_parent_text(&self) -> String {
        let mut out = String::new();
        for (v, p) in self.parent_array().iter().enumerate() {
            match p {
                Some(p) => writeln!(out, "{v} {p}").unwrap(),
                None => writeln!(out, "{v} -1").unwrap(),
            }
        }
        out
    }

    pub fn parse_parent_text(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let perr = |msg: &str| Error::Parse {
                line: idx + 1,
                msg: msg.to_string(),
            };
            let mut toks = body.split_whitespace();
            let v: usize = toks
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| perr("expected vertex id"))?;
            let p: i64 = toks
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| perr("expected parent id or -1"))?;
            if p < -1 {
                return Err(perr("parent must be a vertex id or -1"));
            }
            pairs.push((v, (p >= 0).then_some(p as usize), idx + 1));
        }
        Self::from_pairs(pairs)
    }

    fn from_pairs(pairs: Vec<(usize, Option<usize>, usize)>) -> Result<Self> {
        let n = pairs.len();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        for (v, p, line) in pairs {
            if v >= n || seen[v] {
                return Err(Error::Parse {
                    line,
                    msg: format!("vertex {v} repeated or out of range 0..{n}"),
                });
            }
            seen[v] = true;
            parent[v] = p;
        }
        Forest::from_parent_array(parent)
    }

    /// DOT digraph, edges parent -> child, roots drawn as double circles.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph elimination_tree {\n");
        for t in &self.trees {
            writeln!(
                out,
                "  {} [label=\"{}\", shape=doublecircle, root=true];",
                t.root(),
                t.root()
            )
            .unwrap();
        }
        for v in 0..self.n {
            if self.trees.iter().all(|t| t.root() != v) {
                writeln!(out, "  {v} [label=\"{v}\"];").unwrap();
            }
        }
        for (v, p) in self.parent_array().iter().enumerate() {
            if let Some(p) = p {
                writeln!(out, "  {p} -> {v};").unwrap();
            }
        }
        out.push_str("}\n");
        out
    }

    /// Reads back the output of [`Forest::to_dot`].
    pub fn parse_dot(text: &str) -> Result<Self> {
        let mut nodes = Vec::new();
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim().trim_end_matches(';').trim();
            if line.is_empty() || line.starts_with("digraph") || line == "}" || line.starts_with("//") {
                continue;
            }
            let perr = || Error::Parse {
                line: idx + 1,
                msg: format!("unrecognized DOT statement `{line}`"),
            };
            if let Some((a, b)) = line.split_once("->") {
                let a: usize = a.trim().parse().map_err(|_| perr())?;
                let b: usize = b.trim().parse().map_err(|_| perr())?;
                edges.push((a, b, idx + 1));
            } else {
                let id = line.split(|c: char| c == '[' || c.is_whitespace()).next().unwrap_or("");
                nodes.push(id.parse::<usize>().map_err(|_| perr())?);
            }
        }
        let n = nodes.len();
        let mut pairs: Vec<(usize, Option<usize>, usize)> = nodes.iter().map(|&v| (v, None, 0)).collect();
        for (p, c, line) in edges {
            let slot = pairs.iter_mut().find(|(v, _, _)| *v == c).ok_or_else(|| Error::Parse {
                line,
                msg: format!("edge to undeclared node {c}"),
            })?;
            if slot.1.is_some() || p >= n {
                return Err(Error::Parse {
                    line,
                    msg: format!("vertex {c} has two parents or parent out of range"),
                });
            }
            slot.1 = Some(p);
            slot.2 = line;
        }
        Self::from_pairs(pairs)
    }
}

impl From<RootedTree> for Forest {
    fn from(t: RootedTree) -> Self {
        Forest {
            n: t.n(),
            trees: vec![t],
        }
    }
}
