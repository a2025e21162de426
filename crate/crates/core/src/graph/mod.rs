//! Simple undirected graphs over a fixed vertex range, with edges stored as a
//! bitset over canonical edge indices.
//!
//! The edge `(u, v)` with `u < v < n` has index `u*n - u*(u+1)/2 + (v - u - 1)`
//! (row-major over the upper triangle). Every serialized format in the crate
//! depends on this numbering.

mod bitset;
mod embed;
mod families;
mod invariants;
pub mod io;
mod matching;
mod pattern;

pub use bitset::BitSet;
pub use embed::{contains_copy, contains_copy_through, find_copy, enumerate_copies, CopyIter, Embedding};
pub use families::{
    make_broom, make_clique, make_cycle, make_double_star, make_matching, make_path, make_star,
    make_turan, turan_part_of, turan_part_sizes,
};
pub use invariants::{
    chromatic_number, components, domination_number, has_dominating_set, has_vertex_cover,
    is_bipartite, is_connected, max_degree, max_leaf_count, min_vertex_cover_up_to,
};
pub use matching::maximum_matching_size;
pub use pattern::{Family, PatternGraph};

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Number of unordered pairs on `n` vertices.
#[inline]
pub const fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Canonical index of the edge `{u, v}` in `K_n`.
#[inline]
pub fn edge_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u != v && u < n && v < n);
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

/// Inverse of [`edge_index`].
pub fn edge_endpoints(n: usize, index: usize) -> (usize, usize) {
    debug_assert!(index < pair_count(n));
    let mut u = 0;
    let mut row_start = 0;
    loop {
        let row_len = n - u - 1;
        if index < row_start + row_len {
            return (u, u + 1 + index - row_start);
        }
        row_start += row_len;
        u += 1;
    }
}

/// Endpoint table for all edges of `K_n`, in index order.
pub fn endpoint_table(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(pair_count(n));
    for u in 0..n {
        for v in u + 1..n {
            out.push((u, v));
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: BitSet,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, edges: BitSet::new(pair_count(n)) }
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = BitSet::new(pair_count(n));
        edges.fill();
        Graph { n, edges }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from an edge bitset over the canonical indices of `K_n`.
    pub fn from_edge_set(n: usize, edges: BitSet) -> Self {
        assert_eq!(edges.len(), pair_count(n), "edge set length mismatch");
        Graph { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_set(&self) -> &BitSet {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.count_ones()
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.edges.insert(edge_index(self.n, u, v));
        Ok(())
    }

    /// Panics on invalid endpoints; use [`Graph::try_add_edge`] for input data.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.try_add_edge(u, v).expect("invalid edge");
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.edges.remove(edge_index(self.n, u, v));
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && u < self.n && v < self.n && self.edges.contains(edge_index(self.n, u, v))
    }

    #[inline]
    pub fn has_edge_index(&self, index: usize) -> bool {
        self.edges.contains(index)
    }

    pub fn edge_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter()
    }

    /// Edges as `(u, v)` pairs with `u < v`, in index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        self.edges.iter().map(move |i| edge_endpoints(n, i))
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.has_edge(u, v))
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbors(u).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for (u, v) in self.edges() {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Adjacency rows as bitsets over vertices.
    pub fn adjacency(&self) -> Vec<BitSet> {
        let mut rows = vec![BitSet::new(self.n); self.n];
        for (u, v) in self.edges() {
            rows[u].insert(v);
            rows[v].insert(u);
        }
        rows
    }

    /// Subgraph on the same vertex set keeping the edges accepted by `keep`.
    pub fn filter_edges<F: FnMut(usize) -> bool>(&self, mut keep: F) -> Graph {
        let mut out = Graph::empty(self.n);
        for i in self.edges.iter() {
            if keep(i) {
                out.edges.insert(i);
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == pair_count(self.n)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (k, (u, v)) in self.edges().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}
