//! Searching for polychromatic colourings of complete graphs, and the
//! quantities built on it: `ξ(H)`, ξ-primitivity and the two-colour Turán
//! number on tiny boards.

mod backtrack;
mod ex2;
mod exhaustive;

pub use backtrack::backtracking_polychromatic;
pub use ex2::{ex2_bruteforce, EX2_MAX_VERTICES};
pub use exhaustive::{exhaustive_polychromatic, exhaustive_polychromatic_unreduced, EXHAUSTIVE_MAX_EDGES};

use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{is_polychromatic, Color, EdgeColoring};
use crate::graph::{enumerate_copies, pair_count, Graph, PatternGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum XiError {
    #[error("K_{n} has {edges} edges; exhaustive mode handles at most {limit}")]
    TooLarge { n: usize, edges: usize, limit: usize },
    #[error("node budget must be positive")]
    ZeroBudget,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Found { coloring: EdgeColoring },
    Refuted,
    Timeout,
}

impl Verdict {
    pub fn is_found(&self) -> bool {
        matches!(self, Verdict::Found { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Found { .. } => "found",
            Verdict::Refuted => "refuted",
            Verdict::Timeout => "timeout",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exhaustive,
    Backtracking,
}

/// Result of one polychromatic search on `K_n`.
#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub n: usize,
    pub method: Method,
    #[serde(flatten)]
    pub verdict: Verdict,
    /// Colour vectors scanned (exhaustive) or branch nodes (backtracking).
    pub nodes: u64,
    /// Number of copies of the pattern in `K_n`.
    pub copies: usize,
    /// Symmetry reductions that were applied, in words.
    pub reductions: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Every copy of `h` in `K_n` as a sorted list of edge indices.
pub(crate) fn copy_edge_lists(h: &PatternGraph, n: usize) -> Vec<Vec<usize>> {
    if h.vertex_count() > n {
        return Vec::new();
    }
    enumerate_copies(h, &Graph::complete(n)).map(|e| e.edges).collect()
}

pub(crate) fn coloring_from_digits(n: usize, digits: &[u8]) -> EdgeColoring {
    debug_assert_eq!(digits.len(), pair_count(n));
    let colors = digits.iter().map(|&d| Some(Color::from_index(d as usize))).collect();
    EdgeColoring::from_indexed(Graph::complete(n), colors).expect("complete colouring")
}

/// How `compute_xi` and `is_xi_primitive` pick a searcher.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    /// Exhaustive when `C(n,2) <= 10`, backtracking otherwise.
    #[default]
    Auto,
    Exhaustive,
    Backtracking,
}

pub fn polychromatic_search(
    n: usize,
    h: &PatternGraph,
    mode: SearchMode,
    budget: Option<u64>,
) -> Result<SearchOutcome, XiError> {
    let exhaustive = match mode {
        SearchMode::Exhaustive => true,
        SearchMode::Backtracking => false,
        SearchMode::Auto => pair_count(n) <= 10,
    };
    if exhaustive {
        exhaustive_polychromatic(n, h)
    } else {
        backtracking_polychromatic(n, h, budget)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum XiValue {
    Exact { value: usize },
    /// `upper` is `None` when no refutation was obtained below the cap.
    Bracket { lower: usize, upper: Option<usize> },
}

impl XiValue {
    pub fn exact(&self) -> Option<usize> {
        match *self {
            XiValue::Exact { value } => Some(value),
            XiValue::Bracket { .. } => None,
        }
    }

    pub fn lower(&self) -> usize {
        match *self {
            XiValue::Exact { value } => value,
            XiValue::Bracket { lower, .. } => lower,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct XiReport {
    pub pattern: String,
    pub pattern_vertices: usize,
    pub xi: XiValue,
    /// Polychromatic colouring of `K_ξ` (or of the bracket's lower end).
    pub witness: Option<EdgeColoring>,
    /// One entry per board size that was searched.
    pub searches: Vec<SearchOutcome>,
    /// `false` if a larger board was found polychromatic after a smaller one
    /// was refuted, which would contradict restriction to a sub-board.
    pub consistent: bool,
    pub witness_verified: bool,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct XiOptions {
    pub mode: SearchMode,
    pub budget: Option<u64>,
    /// Keep searching every `n` up to the cap even after a refutation.
    pub all_n: bool,
}

/// `ξ(H)` by searching `n = |V(H)|, |V(H)|+1, ...` up to `n_cap`.
///
/// A polychromatic colouring of `K_{n+1}` restricts to one of `K_n`, so by
/// default the scan stops at the first refutation; `all_n` searches every
/// board anyway and reports whether the verdicts are consistent.
pub fn compute_xi(h: &PatternGraph, n_cap: usize, opts: XiOptions) -> Result<XiReport, XiError> {
    let start_n = h.vertex_count();
    if n_cap < start_n {
        return Err(XiError::InvalidParameter(format!(
            "n_cap {n_cap} is below |V(H)| = {start_n}"
        )));
    }
    if opts.budget == Some(0) {
        return Err(XiError::ZeroBudget);
    }
    let mut searches = Vec::new();
    for n in start_n..=n_cap {
        let out = polychromatic_search(n, h, opts.mode, opts.budget)?;
        let refuted = out.verdict.is_refuted();
        searches.push(out);
        if refuted && !opts.all_n {
            break;
        }
    }
    let largest_found = searches.iter().filter(|s| s.verdict.is_found()).map(|s| s.n).max();
    let first_refuted = searches.iter().find(|s| s.verdict.is_refuted()).map(|s| s.n);
    let consistent = match (largest_found, first_refuted) {
        (Some(f), Some(r)) => f < r,
        _ => true,
    };
    // Boards smaller than H carry no copy, so K_{|V(H)|-1} is vacuously fine.
    let lower = largest_found.unwrap_or(start_n - 1);
    let xi = match first_refuted {
        Some(r) if r == lower + 1 => XiValue::Exact { value: lower },
        Some(r) => XiValue::Bracket { lower, upper: Some(r - 1) },
        None => XiValue::Bracket { lower, upper: None },
    };
    let witness = match largest_found {
        Some(f) => searches.iter().find_map(|s| match &s.verdict {
            Verdict::Found { coloring } if s.n == f => Some(coloring.clone()),
            _ => None,
        }),
        None => Some(EdgeColoring::complete(start_n - 1, |_, _| Color::Red)),
    };
    let witness_verified = witness.as_ref().is_none_or(|c| is_polychromatic(c, h));
    Ok(XiReport {
        pattern: h.label(),
        pattern_vertices: start_n,
        xi,
        witness,
        searches,
        consistent,
        witness_verified,
    })
}

/// Three-valued answer for [`is_xi_primitive`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "answer", rename_all = "snake_case")]
pub enum Primitivity {
    /// Every 3-colouring of `K_{|V(H)|}` has a copy of `H` using at most two colours.
    Primitive,
    /// A polychromatic colouring of `K_{|V(H)|}` exists.
    NotPrimitive { witness: EdgeColoring },
    /// The search ran out of budget.
    Unknown,
}

impl Primitivity {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Primitivity::Primitive => Some(true),
            Primitivity::NotPrimitive { .. } => Some(false),
            Primitivity::Unknown => None,
        }
    }
}

pub fn is_xi_primitive(
    h: &PatternGraph,
    mode: SearchMode,
    budget: Option<u64>,
) -> Result<(Primitivity, SearchOutcome), XiError> {
    if budget == Some(0) {
        return Err(XiError::ZeroBudget);
    }
    let out = polychromatic_search(h.vertex_count(), h, mode, budget)?;
    let p = match &out.verdict {
        Verdict::Refuted => Primitivity::Primitive,
        Verdict::Found { coloring } => Primitivity::NotPrimitive { witness: coloring.clone() },
        Verdict::Timeout => Primitivity::Unknown,
    };
    Ok((p, out))
}
