//! Three-colour edge colourings, the explicit constructions, and the
//! verification oracles (polychromatic check, bi-coloured copy finder,
//! balance check).

mod constructions;
mod decomposition;
pub mod io;
mod verify;

pub use constructions::{
    balanced_case, balanced_coloring, k3_matching_coloring, k4_grid_coloring,
    matching_polychromatic, matching_polychromatic_parts, split_coloring, turan_inherited_coloring,
    BalancedCase,
};
pub use decomposition::{one_factorization, walecki_decomposition};
pub use verify::{
    find_bicolored_copy, find_unbalanced_vertex, is_balanced, is_polychromatic,
    max_bicolored_matching, max_bicolored_star,
};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{edge_index, pair_count, Graph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("edge {0}-{1} is not in the host graph")]
    NotAHostEdge(usize, usize),
    #[error("host edge {0}-{1} has no colour")]
    Uncolored(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Edge colour. The order `Red < Blue < Green` is used for every tie-break.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Color {
    #[serde(rename = "R")]
    Red,
    #[serde(rename = "B")]
    Blue,
    #[serde(rename = "G")]
    Green,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::Red, Color::Blue, Color::Green];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    #[inline]
    pub fn from_index(i: usize) -> Color {
        Color::ALL[i]
    }

    /// Bit `1 << index`, for colour-set masks.
    #[inline]
    pub fn bit(self) -> u8 {
        1 << self.index()
    }

    pub fn code(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Blue => 'B',
            Color::Green => 'G',
        }
    }

    pub fn from_code(s: &str) -> Option<Color> {
        match s.trim() {
            "R" | "r" | "red" | "Red" => Some(Color::Red),
            "B" | "b" | "blue" | "Blue" => Some(Color::Blue),
            "G" | "g" | "green" | "Green" => Some(Color::Green),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Blue => "blue",
            Color::Green => "green",
        }
    }

    /// The two other colours, in order.
    pub fn others(self) -> [Color; 2] {
        match self {
            Color::Red => [Color::Blue, Color::Green],
            Color::Blue => [Color::Red, Color::Green],
            Color::Green => [Color::Red, Color::Blue],
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

/// Per-vertex `(red, blue, green)` degrees.
pub type ColorDegreeProfile = Vec<[usize; 3]>;

/// Total colouring of the edges of a host graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    host: Graph,
    colors: Vec<Option<Color>>,
}

impl EdgeColoring {
    /// Colours every host edge with `f(u, v)` (`u < v`).
    pub fn from_fn<F: FnMut(usize, usize) -> Color>(host: Graph, mut f: F) -> EdgeColoring {
        let n = host.n();
        let mut colors = vec![None; pair_count(n)];
        for (u, v) in host.edges() {
            colors[edge_index(n, u, v)] = Some(f(u, v));
        }
        EdgeColoring { host, colors }
    }

    pub fn complete<F: FnMut(usize, usize) -> Color>(n: usize, f: F) -> EdgeColoring {
        EdgeColoring::from_fn(Graph::complete(n), f)
    }

    /// Builds a colouring from `(u, v, colour)` triples; the host is the set of
    /// listed edges on `n` vertices.
    pub fn from_triples<I>(n: usize, triples: I) -> Result<EdgeColoring, ColoringError>
    where
        I: IntoIterator<Item = (usize, usize, Color)>,
    {
        let mut host = Graph::empty(n);
        let mut colors = vec![None; pair_count(n)];
        for (u, v, c) in triples {
            host.try_add_edge(u, v).map_err(|e| ColoringError::Parse(e.to_string()))?;
            colors[edge_index(n, u, v)] = Some(c);
        }
        Ok(EdgeColoring { host, colors })
    }

    /// Colours indexed by canonical edge index of `K_n`; `None` exactly off the host.
    pub fn from_indexed(host: Graph, colors: Vec<Option<Color>>) -> Result<EdgeColoring, ColoringError> {
        let n = host.n();
        if colors.len() != pair_count(n) {
            return Err(ColoringError::InvalidParameter("colour vector length".into()));
        }
        for (i, c) in colors.iter().enumerate() {
            let (u, v) = crate::graph::edge_endpoints(n, i);
            match (host.has_edge_index(i), c) {
                (true, None) => return Err(ColoringError::Uncolored(u, v)),
                (false, Some(_)) => return Err(ColoringError::NotAHostEdge(u, v)),
                _ => {}
            }
        }
        Ok(EdgeColoring { host, colors })
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn n(&self) -> usize {
        self.host.n()
    }

    pub fn color(&self, u: usize, v: usize) -> Option<Color> {
        if u == v || u >= self.n() || v >= self.n() {
            return None;
        }
        self.colors[edge_index(self.n(), u, v)]
    }

    #[inline]
    pub fn color_at(&self, index: usize) -> Option<Color> {
        self.colors[index]
    }

    pub fn as_indexed(&self) -> &[Option<Color>] {
        &self.colors
    }

    /// `(u, v, colour)` for every host edge in index order.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, Color)> + '_ {
        self.host.edges().map(|(u, v)| (u, v, self.color(u, v).expect("host edge coloured")))
    }

    /// Spanning subgraph of the edges whose colour is in `mask` (bit per colour).
    pub fn class_union(&self, mask: u8) -> Graph {
        self.host.filter_edges(|i| self.colors[i].is_some_and(|c| mask & c.bit() != 0))
    }

    pub fn class(&self, c: Color) -> Graph {
        self.class_union(c.bit())
    }

    pub fn color_counts(&self) -> [usize; 3] {
        let mut out = [0; 3];
        for c in self.colors.iter().flatten() {
            out[c.index()] += 1;
        }
        out
    }

    pub fn degree_profile(&self) -> ColorDegreeProfile {
        let mut prof = vec![[0; 3]; self.n()];
        for (u, v, c) in self.triples() {
            prof[u][c.index()] += 1;
            prof[v][c.index()] += 1;
        }
        prof
    }

    /// Applies a colour permutation: colour `c` becomes `perm[c.index()]`.
    pub fn permute_colors(&self, perm: [Color; 3]) -> EdgeColoring {
        EdgeColoring {
            host: self.host.clone(),
            colors: self.colors.iter().map(|c| c.map(|c| perm[c.index()])).collect(),
        }
    }

    /// Restriction to the first `m` vertices.
    pub fn restrict(&self, m: usize) -> EdgeColoring {
        let mut host = Graph::empty(m);
        let mut colors = vec![None; pair_count(m)];
        for (u, v, c) in self.triples().filter(|&(_, v, _)| v < m) {
            host.add_edge(u, v);
            colors[edge_index(m, u, v)] = Some(c);
        }
        EdgeColoring { host, colors }
    }
}

/// Serialized form: `{"n": 4, "edges": [[0, 1, "R"], ...]}`.
#[derive(Serialize, Deserialize)]
struct ColoringRecord {
    n: usize,
    edges: Vec<(usize, usize, Color)>,
}

impl Serialize for EdgeColoring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ColoringRecord { n: self.n(), edges: self.triples().collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for EdgeColoring {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rec = ColoringRecord::deserialize(d)?;
        EdgeColoring::from_triples(rec.n, rec.edges).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for EdgeColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgeColoring(n={}; ", self.n())?;
        for (k, (u, v, c)) in self.triples().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}:{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colour_order_and_codes() {
        assert!(Color::Red < Color::Blue && Color::Blue < Color::Green);
        for c in Color::ALL {
            assert_eq!(Color::from_code(&c.code().to_string()), Some(c));
            assert_eq!(Color::from_index(c.index()), c);
        }
        assert_eq!(serde_json::to_string(&Color::Green).unwrap(), "\"G\"");
    }

    #[test]
    fn from_indexed_checks_host() {
        let mut host = Graph::empty(3);
        host.add_edge(0, 1);
        assert!(EdgeColoring::from_indexed(host.clone(), vec![None, None, None]).is_err());
        assert!(EdgeColoring::from_indexed(host.clone(), vec![Some(Color::Red), Some(Color::Red), None]).is_err());
        let c = EdgeColoring::from_indexed(host, vec![Some(Color::Blue), None, None]).unwrap();
        assert_eq!(c.color(1, 0), Some(Color::Blue));
        assert_eq!(c.color(1, 2), None);
    }

    #[test]
    fn json_round_trip() {
        let c = EdgeColoring::complete(5, |u, v| Color::from_index((u + 2 * v) % 3));
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.starts_with("{\"n\":5,\"edges\":[[0,1,"));
        assert_eq!(serde_json::from_str::<EdgeColoring>(&s).unwrap(), c);
        assert!(serde_json::from_str::<EdgeColoring>(r#"{"n":2,"edges":[[0,2,"R"]]}"#).is_err());
    }

    #[test]
    fn profile_sums_to_degree() {
        let c = EdgeColoring::complete(6, |u, v| Color::from_index((u * 7 + v) % 3));
        for (v, p) in c.degree_profile().iter().enumerate() {
            assert_eq!(p.iter().sum::<usize>(), c.host().degree(v));
        }
    }
}
