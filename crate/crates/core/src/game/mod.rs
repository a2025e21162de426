//! The turnaround game: Builder exposes a new edge of `K_n` and forbids one
//! colour, Painter colours the edge with one of the other two, and Painter
//! wins as soon as some colour class contains a copy of the target `H`.

mod bounds;
mod builders;
mod painters;
mod solve;
mod verify;

pub use bounds::{f_bracket, FCertificate, FReport, FStep, FOptions};
pub use builders::{
    offline_polychromatic_builder, star_builder, tau3_tree_builder, triangle_builder_n5,
    OfflineBuilder, SequentialBuilder, StarBuilder, Tau3Builder, TriangleBuilderN5,
};
pub use painters::{
    two_color_painter, GreedyPainter, RandomPainter, ScriptedPainter, TwoColorPainter,
};
pub use solve::{solve_exact, solver_builder, GameValue, SolveOptions, SolverBuilder};
pub use verify::{
    confirm_counterexample, ramsey_2color_check, verify_builder_strategy, Counterexample, RamseyCheck, VerifyOptions,
    VerifyReport, RAMSEY_MAX_EDGES,
};

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{Color, EdgeColoring};
use crate::graph::{contains_copy_through, edge_index, endpoint_table, pair_count, Graph, PatternGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Player {
    Builder,
    Painter,
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Builder => "Builder",
            Player::Painter => "Painter",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("{offender} broke the rules in round {round}: {reason}")]
    ProtocolViolation { offender: Player, round: usize, reason: String },
    #[error("strategy invariant violated in round {round}: {message}")]
    InvariantViolated { round: usize, message: String },
    #[error("strategy undefined here: {0}")]
    StrategyUndefined(String),
    #[error("invalid board: {0}")]
    InvalidBoard(String),
    #[error("search budget of {0} nodes exhausted")]
    Budget(u64),
    #[error("input: {0}")]
    Input(String),
}

/// Builder's move: expose `edge` and forbid `forbidden`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuilderMove {
    pub edge: (usize, usize),
    pub forbidden: Color,
}

impl BuilderMove {
    pub fn new(u: usize, v: usize, forbidden: Color) -> BuilderMove {
        BuilderMove { edge: (u.min(v), u.max(v)), forbidden }
    }
}

/// One round of a transcript.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    pub edge: (usize, usize),
    pub forbidden: Color,
    pub chosen: Color,
}

enum Detector {
    /// For each edge, the copies of `H` through it as bitmasks over the board's edges.
    Masks(Vec<Vec<u64>>),
    Generic,
}

/// Largest number of copies kept as bitmasks.
const MASK_COPY_LIMIT: usize = 4_000_000;

/// The board `K_n` together with the target and a monochromatic-copy detector.
pub struct Board {
    n: usize,
    target: PatternGraph,
    endpoints: Vec<(usize, usize)>,
    detector: Detector,
}

impl Board {
    pub fn new(n: usize, target: PatternGraph) -> Result<Arc<Board>, GameError> {
        if n == 0 {
            return Err(GameError::InvalidBoard("board needs at least one vertex".into()));
        }
        if target.edge_count() == 0 {
            return Err(GameError::InvalidBoard("target needs at least one edge".into()));
        }
        let m = pair_count(n);
        let mut detector = Detector::Generic;
        if m <= 64 && target.vertex_count() <= n {
            let mut by_edge = vec![Vec::new(); m];
            let mut total = 0usize;
            let mut ok = true;
            for e in crate::graph::enumerate_copies(&target, &Graph::complete(n)) {
                total += 1;
                if total > MASK_COPY_LIMIT {
                    ok = false;
                    break;
                }
                let mask = e.edges.iter().fold(0u64, |a, &i| a | 1 << i);
                for &i in &e.edges {
                    by_edge[i].push(mask);
                }
            }
            if ok {
                detector = Detector::Masks(by_edge);
            }
        } else if target.vertex_count() > n {
            detector = Detector::Masks(vec![Vec::new(); m]);
        }
        Ok(Arc::new(Board { n, endpoints: endpoint_table(n), target, detector }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.endpoints.len()
    }

    pub fn target(&self) -> &PatternGraph {
        &self.target
    }

    pub fn endpoints(&self, index: usize) -> (usize, usize) {
        self.endpoints[index]
    }

    pub fn index(&self, u: usize, v: usize) -> usize {
        edge_index(self.n, u, v)
    }

    /// Copies through `e`, as masks, when the board is small enough to store them.
    pub(crate) fn copy_masks_through(&self, e: usize) -> Option<&[u64]> {
        match &self.detector {
            Detector::Masks(by_edge) => Some(&by_edge[e]),
            Detector::Generic => None,
        }
    }

    /// Whether colour class `class` (which contains edge `e`) has a copy of
    /// the target through `e`.
    pub fn completes_copy(&self, class: &Graph, e: usize) -> bool {
        if class.edge_count() < self.target.edge_count() {
            return false;
        }
        match &self.detector {
            Detector::Masks(by_edge) => {
                let mask = class.edge_set().words().first().copied().unwrap_or(0);
                by_edge[e].iter().any(|&c| c & mask == c)
            }
            Detector::Generic => {
                let (u, v) = self.endpoints[e];
                contains_copy_through(&self.target, class, u, v)
            }
        }
    }
}

/// A position: which edges are exposed and how they were coloured.
#[derive(Clone)]
pub struct GameState {
    board: Arc<Board>,
    colors: Vec<Option<Color>>,
    classes: [Graph; 3],
    history: Vec<Round>,
    painter_won: bool,
}

impl GameState {
    pub fn new(board: Arc<Board>) -> GameState {
        let n = board.n();
        GameState {
            colors: vec![None; board.edge_count()],
            classes: [Graph::empty(n), Graph::empty(n), Graph::empty(n)],
            history: Vec::new(),
            painter_won: false,
            board,
        }
    }

    pub fn board(&self) -> &Arc<Board> {
        &self.board
    }

    pub fn n(&self) -> usize {
        self.board.n()
    }

    pub fn target(&self) -> &PatternGraph {
        self.board.target()
    }

    pub fn rounds(&self) -> usize {
        self.history.len()
    }

    pub fn history(&self) -> &[Round] {
        &self.history
    }

    pub fn color(&self, u: usize, v: usize) -> Option<Color> {
        if u == v {
            return None;
        }
        self.colors[self.board.index(u, v)]
    }

    pub fn color_at(&self, index: usize) -> Option<Color> {
        self.colors[index]
    }

    pub fn is_exposed(&self, u: usize, v: usize) -> bool {
        self.color(u, v).is_some()
    }

    pub fn class(&self, c: Color) -> &Graph {
        &self.classes[c.index()]
    }

    pub fn color_degree(&self, v: usize, c: Color) -> usize {
        self.classes[c.index()].degree(v)
    }

    pub fn painter_won(&self) -> bool {
        self.painter_won
    }

    pub fn board_full(&self) -> bool {
        self.history.len() == self.board.edge_count()
    }

    pub fn is_over(&self) -> bool {
        self.painter_won || self.board_full()
    }

    /// Checks a Builder move against the current position.
    pub fn check_move(&self, mv: &BuilderMove) -> Result<usize, GameError> {
        let (u, v) = mv.edge;
        let bad = |reason: String| GameError::ProtocolViolation {
            offender: Player::Builder,
            round: self.rounds() + 1,
            reason,
        };
        if self.is_over() {
            return Err(bad("the game is already over".into()));
        }
        if u == v || u >= self.n() || v >= self.n() {
            return Err(bad(format!("{u}-{v} is not an edge of K_{}", self.n())));
        }
        let e = self.board.index(u, v);
        if self.colors[e].is_some() {
            return Err(bad(format!("edge {u}-{v} was already exposed")));
        }
        Ok(e)
    }

    /// Plays one round; returns whether Painter has now won.
    pub fn apply(&mut self, mv: &BuilderMove, chosen: Color) -> Result<bool, GameError> {
        let e = self.check_move(mv)?;
        if chosen == mv.forbidden {
            return Err(GameError::ProtocolViolation {
                offender: Player::Painter,
                round: self.rounds() + 1,
                reason: format!("coloured {}-{} with the forbidden colour {chosen}", mv.edge.0, mv.edge.1),
            });
        }
        self.colors[e] = Some(chosen);
        self.classes[chosen.index()].add_edge(mv.edge.0, mv.edge.1);
        self.history.push(Round { edge: mv.edge, forbidden: mv.forbidden, chosen });
        self.painter_won = self.board.completes_copy(&self.classes[chosen.index()], e);
        Ok(self.painter_won)
    }

    /// Takes back the last round.
    pub fn undo(&mut self) {
        if let Some(r) = self.history.pop() {
            let (u, v) = r.edge;
            let e = self.board.index(u, v);
            self.colors[e] = None;
            self.classes[r.chosen.index()].remove_edge(u, v);
            self.painter_won = false;
        }
    }

    /// Exposed edges with their colours.
    pub fn coloring(&self) -> EdgeColoring {
        EdgeColoring::from_triples(self.n(), self.history.iter().map(|r| (r.edge.0, r.edge.1, r.chosen)))
            .expect("history edges are distinct")
    }
}

pub trait BuilderStrategy: Send + Sync {
    fn name(&self) -> String;
    fn next_move(&self, state: &GameState) -> Result<BuilderMove, GameError>;
    /// Checks the strategy's own invariants on a position it produced.
    fn audit(&self, _state: &GameState) -> Result<(), String> {
        Ok(())
    }
}

pub trait PainterStrategy {
    fn name(&self) -> String;
    fn choose(&mut self, state: &GameState, mv: &BuilderMove) -> Result<Color, GameError>;
}

#[derive(Clone, Debug, Serialize)]
pub struct GameOutcome {
    pub n: usize,
    pub target: String,
    pub builder: String,
    pub painter: String,
    pub winner: Player,
    pub rounds: usize,
    pub transcript: Vec<Round>,
    #[serde(rename = "final")]
    pub final_coloring: EdgeColoring,
}

fn outcome(state: &GameState, builder: String, painter: String) -> GameOutcome {
    GameOutcome {
        n: state.n(),
        target: state.target().label(),
        builder,
        painter,
        winner: if state.painter_won() { Player::Painter } else { Player::Builder },
        rounds: state.rounds(),
        transcript: state.history().to_vec(),
        final_coloring: state.coloring(),
    }
}

/// Plays a full game. Builder's audit runs after every round.
pub fn play(
    board: &Arc<Board>,
    builder: &dyn BuilderStrategy,
    painter: &mut dyn PainterStrategy,
) -> Result<GameOutcome, GameError> {
    let mut state = GameState::new(board.clone());
    while !state.is_over() {
        let mv = builder.next_move(&state)?;
        state.check_move(&mv)?;
        let chosen = painter.choose(&state, &mv)?;
        state.apply(&mv, chosen)?;
        builder
            .audit(&state)
            .map_err(|message| GameError::InvariantViolated { round: state.rounds(), message })?;
    }
    Ok(outcome(&state, builder.name(), painter.name()))
}

/// Replays a transcript, checking legality, and reports the resulting outcome.
/// Rounds after Painter's win are rejected.
pub fn replay(board: &Arc<Board>, transcript: &[Round]) -> Result<GameOutcome, GameError> {
    let mut state = GameState::new(board.clone());
    for r in transcript {
        state.apply(&BuilderMove::new(r.edge.0, r.edge.1, r.forbidden), r.chosen)?;
    }
    Ok(outcome(&state, "replay".into(), "replay".into()))
}
