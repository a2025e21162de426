use serde::Serialize;

use super::{
    ramsey_2color_check, solve_exact, star_builder, tau3_tree_builder, triangle_builder_n5,
    verify_builder_strategy, Board, BuilderStrategy, GameError, GameValue, Player, SolveOptions,
    VerifyOptions, RAMSEY_MAX_EDGES,
};
use crate::coloring::EdgeColoring;
use crate::graph::{pair_count, Family, PatternGraph};
use crate::xi::{polychromatic_search, SearchMode, Verdict};

/// Largest board on which a named strategy is checked against every Painter.
const STRATEGY_MAX_EDGES: usize = 22;

/// Why a board size was settled for one side.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FCertificate {
    /// `K_n` has no copy of the target.
    BoardTooSmall,
    /// Builder follows a polychromatic colouring of `K_n`.
    OfflinePolychromatic { coloring: EdgeColoring },
    /// A named strategy survived every Painter line.
    VerifiedStrategy { name: String, plays: u64 },
    /// Every red/blue colouring of `K_n` has a monochromatic copy, so the
    /// two-colour Painter wins.
    RamseyTwoColor,
    Solver { value: GameValue },
    Unknown { notes: Vec<String> },
}

impl FCertificate {
    pub fn winner(&self) -> Option<Player> {
        match self {
            FCertificate::BoardTooSmall
            | FCertificate::OfflinePolychromatic { .. }
            | FCertificate::VerifiedStrategy { .. } => Some(Player::Builder),
            FCertificate::RamseyTwoColor => Some(Player::Painter),
            FCertificate::Solver { value } => Some(value.winner),
            FCertificate::Unknown { .. } => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FStep {
    pub n: usize,
    pub certificate: FCertificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct FReport {
    pub target: String,
    /// Smallest board not certified as a Builder win.
    pub lower: usize,
    /// Smallest board certified as a Painter win.
    pub upper: Option<usize>,
    pub steps: Vec<FStep>,
}

impl FReport {
    pub fn exact(&self) -> Option<usize> {
        (self.upper == Some(self.lower)).then_some(self.lower)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct FOptions {
    pub n_max: usize,
    /// Node budget for polychromatic searches, strategy checks and the solver.
    pub budget: Option<u64>,
}

impl Default for FOptions {
    fn default() -> Self {
        FOptions { n_max: 7, budget: Some(20_000_000) }
    }
}

fn is_triangle(h: &PatternGraph) -> bool {
    h.vertex_count() == 3 && h.edge_count() == 3
}

fn star_size(h: &PatternGraph) -> Option<usize> {
    if let Family::Star(t) = h.family() {
        return Some(t);
    }
    let t = h.edge_count();
    (h.is_tree() && h.max_degree() == t && t >= 2).then_some(t)
}

fn named_strategies(n: usize, h: &PatternGraph) -> Vec<Box<dyn BuilderStrategy>> {
    let mut out: Vec<Box<dyn BuilderStrategy>> = Vec::new();
    if n == 5 && is_triangle(h) {
        out.push(Box::new(triangle_builder_n5()));
    }
    if let Some(t) = star_size(h) {
        if n == 2 * t - 2 {
            out.push(Box::new(star_builder(t).expect("t >= 2")));
        }
    }
    if n == h.vertex_count() && h.is_tree() && h.max_leaf_count().is_some_and(|l| l >= 3) {
        out.push(Box::new(tau3_tree_builder()));
    }
    out
}

fn certify(n: usize, h: &PatternGraph, budget: Option<u64>) -> Result<FCertificate, GameError> {
    if n < h.vertex_count() {
        return Ok(FCertificate::BoardTooSmall);
    }
    let m = pair_count(n);
    let mut notes = Vec::new();
    match polychromatic_search(n, h, SearchMode::Auto, budget) {
        Ok(out) => match out.verdict {
            Verdict::Found { coloring } => return Ok(FCertificate::OfflinePolychromatic { coloring }),
            Verdict::Refuted => notes.push("no polychromatic colouring".to_string()),
            Verdict::Timeout => notes.push("polychromatic search timed out".to_string()),
        },
        Err(e) => notes.push(format!("polychromatic search: {e}")),
    }
    let board = Board::new(n, h.clone())?;
    if m <= STRATEGY_MAX_EDGES {
        for s in named_strategies(n, h) {
            let opts = VerifyOptions { budget, ..VerifyOptions::default() };
            match verify_builder_strategy(s.as_ref(), &board, opts) {
                Ok(r) if r.holds => {
                    return Ok(FCertificate::VerifiedStrategy { name: r.builder, plays: r.plays });
                }
                Ok(r) => notes.push(format!("{} fails", r.builder)),
                Err(e) => notes.push(format!("{}: {e}", s.name())),
            }
        }
    }
    if m <= RAMSEY_MAX_EDGES {
        if ramsey_2color_check(n, h)?.holds {
            return Ok(FCertificate::RamseyTwoColor);
        }
        notes.push("some red/blue colouring avoids the target".into());
    }
    if m <= super::solve::SOLVE_FREE_EDGES || budget.is_some() && n <= 6 {
        match solve_exact(n, h, SolveOptions { budget, vertex_symmetry: true }) {
            Ok(value) => return Ok(FCertificate::Solver { value }),
            Err(e) => notes.push(format!("solver: {e}")),
        }
    }
    Ok(FCertificate::Unknown { notes })
}

/// Brackets `f(H)`, the smallest board on which Painter wins, by certifying
/// `n = 1, 2, ...` until a Painter win or `n_max`.
pub fn f_bracket(h: &PatternGraph, opts: FOptions) -> Result<FReport, GameError> {
    if h.edge_count() == 0 {
        return Err(GameError::InvalidBoard("target needs at least one edge".into()));
    }
    let mut steps = Vec::new();
    for n in 1..=opts.n_max {
        let certificate = certify(n, h, opts.budget)?;
        let painter = certificate.winner() == Some(Player::Painter);
        steps.push(FStep { n, certificate });
        if painter {
            break;
        }
    }
    let lower = steps
        .iter()
        .find(|s| s.certificate.winner() != Some(Player::Builder))
        .map_or(opts.n_max + 1, |s| s.n);
    let upper = steps
        .iter()
        .find(|s| s.certificate.winner() == Some(Player::Painter))
        .map(|s| s.n);
    Ok(FReport { target: h.label(), lower, upper, steps })
}
