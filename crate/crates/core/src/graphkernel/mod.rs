//! Simple labelled graphs: connectivity, decompositions and embedding
//! oracles.
//!
//! Vertices are `0..n` internally (adjacency as bit masks, so `n ≤ 64`) and
//! `1..n` in every external format.

mod blocks;
mod embed;
mod planarity;

pub use blocks::{block_decomposition, three_connected_components, Block, BlockTree, Component, ComponentKind, recompose};
pub use embed::{
    euler_genus_graph, face_width_graph, genus, genus_blockwise, genus_whole, nonorientable_genus,
    rotation_map, Bound, SearchBudget,
};
pub use planarity::is_planar;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} out of range")]
    BadVertex(usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("at most 64 vertices are supported, got {0}")]
    TooLarge(usize),
    #[error("graph is not 2-connected")]
    NotBiconnected,
    #[error("malformed graph6 string: {0}")]
    Graph6(String),
    #[error("malformed graph document: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, GraphError>;

/// A simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelledGraph {
    n: usize,
    adj: Vec<u64>,
}

impl LabelledGraph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > 64 {
            return Err(GraphError::TooLarge(n));
        }
        Ok(LabelledGraph { n, adj: vec![0; n] })
    }

    /// From 0-indexed edges; repeated edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n {
            return Err(GraphError::BadVertex(u));
        }
        if v >= self.n {
            return Err(GraphError::BadVertex(v));
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n).expect("small");
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).expect("valid");
            }
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Self::empty(a + b).expect("small");
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v).expect("valid");
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::empty(n).expect("small");
        for i in 0..n {
            g.add_edge(i, (i + 1) % n).expect("valid");
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n).expect("small");
        for i in 1..n {
            g.add_edge(i - 1, i).expect("valid");
        }
        g
    }

    /// Graph with edge set given by bit `k` of `mask`, edges ordered
    /// `(0,1), (0,2), (1,2), (0,3), …` (column by column).
    pub fn from_edge_mask(n: usize, mask: u64) -> Self {
        let mut g = Self::empty(n).expect("small");
        let mut k = 0;
        for v in 1..n {
            for u in 0..v {
                if mask >> k & 1 == 1 {
                    g.add_edge(u, v).expect("valid");
                }
                k += 1;
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjacency(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let a = self.adj[v];
        (0..self.n).filter(move |&u| a >> u & 1 == 1)
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn n_edges(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Subgraph induced by the vertices in `mask`, relabelled in increasing
    /// order.
    pub fn induced(&self, mask: u64) -> (LabelledGraph, Vec<usize>) {
        let verts: Vec<usize> = (0..self.n).filter(|&v| mask >> v & 1 == 1).collect();
        let mut g = Self::empty(verts.len()).expect("small");
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j).expect("valid");
                }
            }
        }
        (g, verts)
    }

    /// Subgraph on the given edges, vertices relabelled in increasing order.
    pub fn edge_subgraph(&self, edges: &[(usize, usize)]) -> (LabelledGraph, Vec<usize>) {
        let mut verts: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        verts.sort_unstable();
        verts.dedup();
        let idx = |x: usize| verts.iter().position(|&v| v == x).expect("present");
        let mut g = Self::empty(verts.len()).expect("small");
        for &(u, v) in edges {
            g.add_edge(idx(u), idx(v)).expect("valid");
        }
        (g, verts)
    }

    pub fn relabel(&self, perm: &[usize]) -> LabelledGraph {
        let mut g = Self::empty(self.n).expect("small");
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]).expect("valid");
        }
        g
    }

    /// Connected components as vertex masks, ordered by smallest vertex.
    pub fn components(&self) -> Vec<u64> {
        self.components_avoiding(0)
    }

    pub(crate) fn components_avoiding(&self, removed: u64) -> Vec<u64> {
        let mut seen = removed;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.adj[v] & !comp & !removed;
                comp |= new;
                frontier |= new;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// k-connected for `k ≤ 3`: at least `k + 1` vertices and no separating
    /// set of fewer than `k` vertices.
    pub fn is_k_connected(&self, k: usize) -> bool {
        assert!(k <= 3, "only k ≤ 3 is supported");
        if self.n < k + 1 {
            return false;
        }
        if k == 0 {
            return true;
        }
        let all = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let sep = |removed: u64| self.components_avoiding(removed).len() > 1 && removed != all;
        if sep(0) {
            return false;
        }
        if k >= 2 {
            for a in 0..self.n {
                if sep(1 << a) {
                    return false;
                }
            }
        }
        if k >= 3 {
            for a in 0..self.n {
                for b in a + 1..self.n {
                    if sep(1 << a | 1 << b) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Exact chromatic number by backtracking (the empty graph needs 0
    /// colours).
    pub fn chromatic_number(&self) -> usize {
        if self.n == 0 {
            return 0;
        }
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.degree(v)));
        (1..=self.n)
            .find(|&k| {
                let mut colour = vec![usize::MAX; self.n];
                self.colour_with(&order, 0, k, &mut colour, 0)
            })
            .expect("n colours always suffice")
    }

    fn colour_with(&self, order: &[usize], i: usize, k: usize, colour: &mut [usize], used: usize) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        // colours beyond the first unused one are symmetric
        for c in 0..k.min(used + 1) {
            if self.neighbours(v).all(|u| colour[u] != c) {
                colour[v] = c;
                if self.colour_with(order, i + 1, k, colour, used.max(c + 1)) {
                    return true;
                }
                colour[v] = usize::MAX;
            }
        }
        false
    }

    /// Canonical representative under vertex relabelling (by brute force).
    pub fn canonical_form(&self) -> LabelledGraph {
        let mut perm: Vec<usize> = (0..self.n).collect();
        let mut best = self.clone();
        while crate::census::maps::next_permutation(&mut perm) {
            let h = self.relabel(&perm);
            if h.adj < best.adj {
                best = h;
            }
        }
        best
    }

    /// Standard graph6 encoding (for `n ≤ 62`).
    pub fn to_graph6(&self) -> String {
        let mut out = vec![(self.n as u8) + 63];
        let mut bits = Vec::new();
        for v in 1..self.n {
            for u in 0..v {
                bits.push(self.has_edge(u, v));
            }
        }
        for chunk in bits.chunks(6) {
            let mut x = 0u8;
            for (i, &b) in chunk.iter().enumerate() {
                if b {
                    x |= 1 << (5 - i);
                }
            }
            out.push(x + 63);
        }
        String::from_utf8(out).expect("ascii")
    }

    pub fn from_graph6(s: &str) -> Result<Self> {
        let s = s.trim();
        let bytes = s.as_bytes();
        let bad = |m: &str| GraphError::Graph6(format!("{}: `{}`", m, s));
        let first = *bytes.first().ok_or_else(|| bad("empty"))?;
        if !(63..=125).contains(&first) {
            return Err(bad("unsupported size prefix"));
        }
        let n = (first - 63) as usize;
        let needed = (n * n.saturating_sub(1) / 2).div_ceil(6);
        if bytes.len() != 1 + needed {
            return Err(bad("wrong length"));
        }
        let mut g = Self::empty(n)?;
        let mut k = 0;
        for v in 1..n {
            for u in 0..v {
                let byte = bytes[1 + k / 6];
                if !(63..=126).contains(&byte) {
                    return Err(bad("invalid character"));
                }
                if (byte - 63) >> (5 - k % 6) & 1 == 1 {
                    g.add_edge(u, v)?;
                }
                k += 1;
            }
        }
        Ok(g)
    }

    /// Edge-list JSON: `{"n": 4, "edges": [[1,2],[2,3]]}` (1-indexed).
    pub fn to_json(&self) -> String {
        let doc = GraphDoc {
            n: self.n,
            edges: self.edges().iter().map(|&(u, v)| [u + 1, v + 1]).collect(),
        };
        serde_json::to_string(&doc).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: GraphDoc = serde_json::from_str(s).map_err(|e| GraphError::Json(e.to_string()))?;
        let mut g = Self::empty(doc.n)?;
        for [u, v] in doc.edges {
            if u == 0 || v == 0 {
                return Err(GraphError::Json("vertices are numbered from 1".into()));
            }
            g.add_edge(u - 1, v - 1)?;
        }
        Ok(g)
    }

    /// Parses either graph6 or edge-list JSON.
    pub fn parse(s: &str) -> Result<Self> {
        if s.trim_start().starts_with('{') {
            Self::from_json(s)
        } else {
            Self::from_graph6(s)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    n: usize,
    edges: Vec<[usize; 2]>,
}

#[cfg(test)]
mod tests;
