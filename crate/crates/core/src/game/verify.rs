use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::{Board, BuilderMove, BuilderStrategy, GameError, GameState, Round};
use crate::coloring::{Color, EdgeColoring};
use crate::graph::{enumerate_copies, pair_count, Graph, PatternGraph};

/// A Painter line that beats the strategy under test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub transcript: Vec<Round>,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub builder: String,
    pub n: usize,
    pub target: String,
    pub holds: bool,
    /// Complete Painter response sequences examined.
    pub plays: u64,
    /// Positions visited.
    pub nodes: u64,
    /// First failing line in lexicographic order of Painter choices.
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub budget: Option<u64>,
    /// Number of leading rounds split into independent parallel tasks.
    pub split_depth: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { budget: None, split_depth: 10 }
    }
}

const FLUSH: u64 = 4096;

struct Shared {
    nodes: AtomicU64,
    plays: AtomicU64,
    limit: u64,
    over: AtomicBool,
}

struct Walker<'a> {
    builder: &'a dyn BuilderStrategy,
    shared: &'a Shared,
    nodes: u64,
    plays: u64,
}

type Step = Option<Result<Counterexample, GameError>>;

impl Walker<'_> {
    fn flush(&mut self) -> Result<(), GameError> {
        let total = self.shared.nodes.fetch_add(self.nodes, Ordering::Relaxed) + self.nodes;
        self.shared.plays.fetch_add(self.plays, Ordering::Relaxed);
        self.nodes = 0;
        self.plays = 0;
        if total > self.shared.limit || self.shared.over.load(Ordering::Relaxed) {
            self.shared.over.store(true, Ordering::Relaxed);
            return Err(GameError::Budget(self.shared.limit));
        }
        Ok(())
    }

    fn tick(&mut self) -> Result<(), GameError> {
        self.nodes += 1;
        if self.nodes >= FLUSH {
            self.flush()?;
        }
        Ok(())
    }

    fn failure(state: &GameState, reason: String) -> Step {
        Some(Ok(Counterexample { transcript: state.history().to_vec(), reason }))
    }

    /// Asks Builder for a move and checks it.
    fn builder_move(&self, state: &GameState) -> Result<BuilderMove, Step> {
        let mv = self
            .builder
            .next_move(state)
            .map_err(|e| Self::failure(state, format!("strategy failed: {e}")))?;
        state.check_move(&mv).map_err(|e| Self::failure(state, e.to_string()))?;
        Ok(mv)
    }

    /// Plays `chosen`, returning a failure if Painter won or an audit failed.
    fn advance(&self, state: &mut GameState, mv: &BuilderMove, chosen: Color) -> Step {
        let won = state.apply(mv, chosen).expect("checked move and allowed colour");
        if won {
            return Self::failure(state, "Painter completed a monochromatic copy".into());
        }
        if let Err(msg) = self.builder.audit(state) {
            return Self::failure(state, format!("invariant violated: {msg}"));
        }
        None
    }

    fn dfs(&mut self, state: &mut GameState) -> Step {
        if state.board_full() {
            self.plays += 1;
            return None;
        }
        let mv = match self.builder_move(state) {
            Ok(mv) => mv,
            Err(step) => return step,
        };
        for c in mv.forbidden.others() {
            if let Err(e) = self.tick() {
                return Some(Err(e));
            }
            let bad = self.advance(state, &mv, c);
            if bad.is_some() {
                return bad;
            }
            let below = self.dfs(state);
            state.undo();
            if below.is_some() {
                return below;
            }
        }
        None
    }

    /// Replays a prefix of Painter choices (bit `depth-1-i` at round `i`) and
    /// explores the subtree below it. Positions shallower than `depth` are
    /// counted by the prefix whose remaining bits are zero.
    fn explore(&mut self, board: &Arc<Board>, prefix: u64, depth: usize) -> Step {
        let mut state = GameState::new(board.clone());
        let bit = |i: usize| prefix >> (depth - 1 - i) & 1 == 1;
        let rest_zero = |i: usize| prefix & ((1u64 << (depth - i)) - 1) == 0;
        for i in 0..depth {
            if state.board_full() {
                if rest_zero(i) {
                    self.plays += 1;
                }
                return None;
            }
            let mv = match self.builder_move(&state) {
                Ok(mv) => mv,
                Err(step) => return if rest_zero(i) { step } else { None },
            };
            if rest_zero(i + 1) {
                if let Err(e) = self.tick() {
                    return Some(Err(e));
                }
            }
            let bad = self.advance(&mut state, &mv, mv.forbidden.others()[bit(i) as usize]);
            if bad.is_some() {
                return if rest_zero(i + 1) { bad } else { None };
            }
        }
        self.dfs(&mut state)
    }
}

/// Plays `builder` against every Painter: at each round both allowed colours
/// are tried. The strategy holds when no line produces a monochromatic copy
/// and its audit never fails.
pub fn verify_builder_strategy(
    builder: &dyn BuilderStrategy,
    board: &Arc<Board>,
    opts: VerifyOptions,
) -> Result<VerifyReport, GameError> {
    if opts.budget == Some(0) {
        return Err(GameError::Budget(0));
    }
    let depth = opts.split_depth.min(board.edge_count()).min(20);
    let shared = Shared {
        nodes: AtomicU64::new(0),
        plays: AtomicU64::new(0),
        limit: opts.budget.unwrap_or(u64::MAX),
        over: AtomicBool::new(false),
    };
    let hit = (0..1u64 << depth).into_par_iter().find_map_first(|prefix| {
        let mut w = Walker { builder, shared: &shared, nodes: 0, plays: 0 };
        let step = w.explore(board, prefix, depth);
        if let Err(e) = w.flush() {
            return Some(step.unwrap_or(Err(e)));
        }
        step
    });
    let counterexample = match hit {
        Some(Err(e)) => return Err(e),
        Some(Ok(c)) => Some(c),
        None => None,
    };
    Ok(VerifyReport {
        builder: builder.name(),
        n: board.n(),
        target: board.target().label(),
        holds: counterexample.is_none(),
        plays: shared.plays.load(Ordering::Relaxed),
        nodes: shared.nodes.load(Ordering::Relaxed),
        counterexample,
    })
}

/// Re-runs a counterexample against the strategy: every Builder move must be
/// the one the strategy makes, every colour must be legal, and the line must
/// end in a Painter win or a failed audit.
pub fn confirm_counterexample(
    builder: &dyn BuilderStrategy,
    board: &Arc<Board>,
    transcript: &[Round],
) -> Result<bool, GameError> {
    let mut state = GameState::new(board.clone());
    for (i, r) in transcript.iter().enumerate() {
        let mv = builder.next_move(&state)?;
        if mv != BuilderMove::new(r.edge.0, r.edge.1, r.forbidden) {
            return Err(GameError::Input(format!("round {}: strategy plays {mv:?}", i + 1)));
        }
        state.apply(&mv, r.chosen)?;
        if builder.audit(&state).is_err() {
            return Ok(i + 1 == transcript.len());
        }
    }
    Ok(state.painter_won())
}

/// Largest board `ramsey_2color_check` enumerates.
pub const RAMSEY_MAX_EDGES: usize = 21;

#[derive(Clone, Debug, Serialize)]
pub struct RamseyCheck {
    pub n: usize,
    pub target: String,
    /// Every red/blue colouring of `K_n` has a monochromatic copy.
    pub holds: bool,
    pub colorings_checked: u64,
    pub counterexample: Option<EdgeColoring>,
}

/// Enumerates red/blue colourings of `K_n` with edge 0 red.
pub fn ramsey_2color_check(n: usize, h: &PatternGraph) -> Result<RamseyCheck, GameError> {
    let m = pair_count(n);
    if m > RAMSEY_MAX_EDGES {
        return Err(GameError::InvalidBoard(format!(
            "K_{n} has {m} edges; at most {RAMSEY_MAX_EDGES} are enumerated"
        )));
    }
    if h.edge_count() == 0 {
        return Err(GameError::InvalidBoard("target needs at least one edge".into()));
    }
    let coloring = |red: u32| EdgeColoring::complete(n, |u, v| {
        if red >> crate::graph::edge_index(n, u, v) & 1 == 1 { Color::Red } else { Color::Blue }
    });
    let report = |holds, colorings_checked, counterexample| RamseyCheck {
        n,
        target: h.label(),
        holds,
        colorings_checked,
        counterexample,
    };
    if h.vertex_count() > n || m == 0 {
        return Ok(report(false, 1, Some(coloring(u32::MAX))));
    }
    let copies: Vec<u32> = enumerate_copies(h, &Graph::complete(n))
        .map(|e| e.edges.iter().fold(0u32, |a, &i| a | 1 << i))
        .collect();
    let full = (1u32 << m) - 1;
    let total = 1u64 << (m - 1);
    let hit = (0..total).into_par_iter().find_first(|&k| {
        let red = 1 | (k as u32) << 1;
        let blue = full & !red;
        copies.iter().all(|&c| c & red != c && c & blue != c)
    });
    Ok(match hit {
        Some(k) => report(false, k + 1, Some(coloring(1 | (k as u32) << 1))),
        None => report(true, total, None),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{is_polychromatic, k3_matching_coloring};
    use crate::game::{offline_polychromatic_builder, replay, star_builder, triangle_builder_n5, Player};
    use crate::graph::{contains_copy, make_clique, make_path, make_star};

    fn board(n: usize, h: PatternGraph) -> Arc<Board> {
        Board::new(n, h).unwrap()
    }

    #[test]
    fn triangle_builder_survives_every_painter() {
        let r = verify_builder_strategy(&triangle_builder_n5(), &board(5, make_clique(3).unwrap()), VerifyOptions::default())
            .unwrap();
        assert!(r.holds);
        assert_eq!(r.plays, 1 << 10);
        assert_eq!(r.nodes, (1 << 11) - 2);
    }

    #[test]
    fn split_depth_does_not_change_counts() {
        let b = board(5, make_clique(3).unwrap());
        for depth in [0, 1, 4, 10] {
            let r = verify_builder_strategy(&triangle_builder_n5(), &b, VerifyOptions { budget: None, split_depth: depth })
                .unwrap();
            assert_eq!((r.plays, r.nodes), (1024, 2046), "depth {depth}");
        }
    }

    #[test]
    fn star_builders_survive() {
        for t in [3, 4] {
            let b = board(2 * t - 2, make_star(t).unwrap());
            let r = verify_builder_strategy(&star_builder(t).unwrap(), &b, VerifyOptions::default()).unwrap();
            assert!(r.holds, "t={t}: {:?}", r.counterexample);
            assert_eq!(r.plays, 1 << pair_count(2 * t - 2));
        }
    }

    #[test]
    fn offline_builder_with_polychromatic_colouring() {
        let c = k3_matching_coloring();
        assert!(is_polychromatic(&c, &make_clique(3).unwrap()));
        let r = verify_builder_strategy(
            &offline_polychromatic_builder(c),
            &board(4, make_clique(3).unwrap()),
            VerifyOptions::default(),
        )
        .unwrap();
        assert!(r.holds);
        assert_eq!(r.plays, 64);
    }

    #[test]
    fn all_red_offline_builder_loses() {
        let b = board(4, make_clique(3).unwrap());
        let builder = offline_polychromatic_builder(EdgeColoring::complete(4, |_, _| Color::Red));
        for depth in [0, 3, 10] {
            let r = verify_builder_strategy(&builder, &b, VerifyOptions { budget: None, split_depth: depth }).unwrap();
            assert!(!r.holds);
            let cx = r.counterexample.unwrap();
            // All blue on 0-1, 0-2, 0-3, 1-2 closes the triangle 0-1-2.
            assert_eq!(cx.transcript.len(), 4);
            assert_eq!(cx.transcript[3].edge, (1, 2));
            assert!(cx.transcript.iter().all(|r| r.chosen == Color::Blue));
            let out = replay(&b, &cx.transcript).unwrap();
            assert_eq!(out.winner, Player::Painter);
            assert!(contains_copy(&make_clique(3).unwrap(), &out.final_coloring.class(Color::Blue)));
            assert!(confirm_counterexample(&builder, &b, &cx.transcript).unwrap());
        }
    }

    #[test]
    fn budget_is_enforced() {
        let b = board(5, make_clique(3).unwrap());
        let opts = VerifyOptions { budget: Some(100), split_depth: 4 };
        assert_eq!(verify_builder_strategy(&triangle_builder_n5(), &b, opts).unwrap_err(), GameError::Budget(100));
        let opts = VerifyOptions { budget: Some(0), split_depth: 4 };
        assert!(verify_builder_strategy(&triangle_builder_n5(), &b, opts).is_err());
    }

    #[test]
    fn ramsey_checks() {
        let k3 = make_clique(3).unwrap();
        assert!(ramsey_2color_check(6, &k3).unwrap().holds);
        let r = ramsey_2color_check(5, &k3).unwrap();
        assert!(!r.holds);
        let c = r.counterexample.unwrap();
        assert!(!contains_copy(&k3, &c.class(Color::Red)) && !contains_copy(&k3, &c.class(Color::Blue)));
        assert!(ramsey_2color_check(3, &make_star(2).unwrap()).unwrap().holds);
        assert!(!ramsey_2color_check(2, &make_star(2).unwrap()).unwrap().holds);
        for t in [4, 5] {
            let p = make_path(t).unwrap();
            let r = 3 * t / 2 - 1;
            assert!(ramsey_2color_check(r, &p).unwrap().holds, "P{t}");
            assert!(!ramsey_2color_check(r - 1, &p).unwrap().holds, "P{t}");
        }
        assert!(ramsey_2color_check(8, &k3).is_err());
    }
}
