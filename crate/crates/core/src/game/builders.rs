use super::{BuilderMove, BuilderStrategy, GameError, GameState};
use crate::coloring::{Color, EdgeColoring};

fn next_unexposed(state: &GameState) -> Result<(usize, usize), GameError> {
    (0..state.board().edge_count())
        .find(|&e| state.color_at(e).is_none())
        .map(|e| state.board().endpoints(e))
        .ok_or_else(|| GameError::StrategyUndefined("no unexposed edge left".into()))
}

/// Exposes edges in index order and always forbids the same colour.
#[derive(Clone, Copy, Debug)]
pub struct SequentialBuilder {
    pub forbidden: Color,
}

impl Default for SequentialBuilder {
    fn default() -> Self {
        SequentialBuilder { forbidden: Color::Green }
    }
}

impl BuilderStrategy for SequentialBuilder {
    fn name(&self) -> String {
        format!("sequential({})", self.forbidden.code())
    }

    fn next_move(&self, state: &GameState) -> Result<BuilderMove, GameError> {
        let (u, v) = next_unexposed(state)?;
        Ok(BuilderMove::new(u, v, self.forbidden))
    }
}

/// Exposes the edges coloured by `c` in index order, forbidding `c(e)`, then
/// any remaining board edges forbidding red.
#[derive(Clone, Debug)]
pub struct OfflineBuilder {
    coloring: EdgeColoring,
}

pub fn offline_polychromatic_builder(c: EdgeColoring) -> OfflineBuilder {
    OfflineBuilder { coloring: c }
}

impl OfflineBuilder {
    fn planned(&self, u: usize, v: usize) -> Option<Color> {
        if v < self.coloring.n() {
            self.coloring.color(u, v)
        } else {
            None
        }
    }
}

impl BuilderStrategy for OfflineBuilder {
    fn name(&self) -> String {
        format!("offline(n={})", self.coloring.n())
    }

    fn next_move(&self, state: &GameState) -> Result<BuilderMove, GameError> {
        let board = state.board();
        let open = || (0..board.edge_count()).filter(|&e| state.color_at(e).is_none());
        for e in open() {
            let (u, v) = board.endpoints(e);
            if let Some(c) = self.planned(u, v) {
                return Ok(BuilderMove::new(u, v, c));
            }
        }
        let (u, v) = next_unexposed(state)?;
        Ok(BuilderMove::new(u, v, Color::Red))
    }
}

/// Builder's strategy on `K_5` against a monochromatic triangle.
///
/// The four edges at vertex 0 come first; a colour seen twice there is
/// forbidden from then on, so the star ends up as `aabb` or `aabc`. The six
/// remaining edges are then placed so every triangle keeps two colours.
#[derive(Clone, Copy, Debug, Default)]
pub struct TriangleBuilderN5;

pub fn triangle_builder_n5() -> TriangleBuilderN5 {
    TriangleBuilderN5
}

impl TriangleBuilderN5 {
    /// The six non-star moves, once the star is coloured.
    fn plan(state: &GameState) -> Vec<BuilderMove> {
        let star: Vec<Color> = (1..5).map(|v| state.color(0, v).expect("star is coloured")).collect();
        let with = |c: Color| -> Vec<usize> { (1..5).filter(|&v| star[v - 1] == c).collect() };
        let twice: Vec<Color> = Color::ALL.into_iter().filter(|&c| with(c).len() == 2).collect();
        let alpha = twice[0];
        let p = with(alpha);
        let mut moves = vec![BuilderMove::new(p[0], p[1], alpha)];
        if twice.len() == 2 {
            let beta = twice[1];
            let q = with(beta);
            moves.push(BuilderMove::new(q[0], q[1], beta));
            let x = state.color(p[0], p[1]);
            let y = state.color(q[0], q[1]);
            if let (Some(x), Some(y)) = (x, y) {
                moves.extend([
                    BuilderMove::new(p[0], q[0], x),
                    BuilderMove::new(p[1], q[1], x),
                    BuilderMove::new(p[0], q[1], y),
                    BuilderMove::new(p[1], q[0], y),
                ]);
            }
        } else {
            let [beta, gamma] = alpha.others();
            let q = with(beta)[0];
            let r = with(gamma)[0];
            moves.extend([
                BuilderMove::new(q, r, alpha),
                BuilderMove::new(p[0], q, beta),
                BuilderMove::new(p[1], r, beta),
                BuilderMove::new(p[0], r, gamma),
                BuilderMove::new(p[1], q, gamma),
            ]);
        }
        moves
    }
}

impl BuilderStrategy for TriangleBuilderN5 {
    fn name(&self) -> String {
        "triangle-n5".into()
    }

    fn next_move(&self, state: &GameState) -> Result<BuilderMove, GameError> {
        if state.n() != 5 {
            return Err(GameError::StrategyUndefined(format!("triangle builder needs K_5, got K_{}", state.n())));
        }
        let r = state.rounds();
        if r < 4 {
            let repeated = Color::ALL.into_iter().find(|&c| state.color_degree(0, c) >= 2);
            return Ok(BuilderMove::new(0, r + 1, repeated.unwrap_or(Color::Green)));
        }
        Self::plan(state)
            .into_iter()
            .find(|mv| !state.is_exposed(mv.edge.0, mv.edge.1))
            .ok_or_else(|| GameError::StrategyUndefined("board is full".into()))
    }
}

/// Builder's strategy on `K_{2t-2}` against a monochromatic `K_{1,t}`.
///
/// Level `s` extends a board on vertices `0..2s-4` by `a = 2s-4`, `b = 2s-3`.
/// Step `j` joins `a` and `b` to `2j` and `2j+1` so that each of those two
/// sees `a` and `b` in different colours and the colour degrees `D_a`, `D_b`
/// of `a` and `b` into the first `2j` vertices stay within `D <= j+1` and
/// `D_a + D_b <= 2j+1`. The edge `ab` comes last.
#[derive(Clone, Copy, Debug)]
pub struct StarBuilder {
    t: usize,
}

pub fn star_builder(t: usize) -> Result<StarBuilder, GameError> {
    if t < 2 {
        return Err(GameError::StrategyUndefined(format!("star builder needs t >= 2, got {t}")));
    }
    Ok(StarBuilder { t })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum StarSlot {
    Base,
    /// Level `s`, step `j`, `k`-th edge of the step.
    Step { s: usize, j: usize, k: usize },
    Closing { s: usize },
}

impl StarBuilder {
    pub fn board_size(&self) -> usize {
        2 * self.t - 2
    }

    fn slot(&self, round: usize) -> Option<StarSlot> {
        if round == 0 {
            return Some(StarSlot::Base);
        }
        let mut r = round - 1;
        for s in 3..=self.t {
            let steps = s - 2;
            if r < 4 * steps {
                return Some(StarSlot::Step { s, j: r / 4, k: r % 4 });
            }
            if r == 4 * steps {
                return Some(StarSlot::Closing { s });
            }
            r -= 4 * steps + 1;
        }
        None
    }

    /// Largest colour degree of `z` into `0..limit`, with the lowest such colour.
    fn top(state: &GameState, z: usize, limit: usize) -> (usize, Color) {
        let mut best = (0, Color::Red);
        for c in Color::ALL {
            let d = (0..limit).filter(|&x| state.color(z, x) == Some(c)).count();
            if d > best.0 {
                best = (d, c);
            }
        }
        best
    }

    fn step_move(state: &GameState, s: usize, j: usize, k: usize) -> BuilderMove {
        let (a, b) = (2 * s - 4, 2 * s - 3);
        let (u, w) = (2 * j, 2 * j + 1);
        let (da, ca) = Self::top(state, a, 2 * j);
        let (db, cb) = Self::top(state, b, 2 * j);
        let col = |x: usize, y: usize| state.color(x, y).expect("earlier edge of this step");
        // `first` takes two edges forbidding its heavy colour (or, in the
        // balanced case, alternating), `second` copies the forbidden colours
        // from what `first` received.
        let (first, second, heavy) = if da == j + 1 {
            (a, b, Some(ca))
        } else if db == j + 1 {
            (b, a, Some(cb))
        } else {
            (b, a, None)
        };
        match (k, heavy) {
            (0, Some(c)) => BuilderMove::new(first, u, c),
            (1, Some(c)) => BuilderMove::new(first, w, c),
            (0, None) => BuilderMove::new(first, u, cb),
            (1, None) => BuilderMove::new(first, w, col(first, u)),
            (2, _) => BuilderMove::new(second, u, col(first, u)),
            _ => BuilderMove::new(second, w, col(first, w)),
        }
    }

    fn closing_move(state: &GameState, s: usize) -> BuilderMove {
        let (a, b) = (2 * s - 4, 2 * s - 3);
        let (da, ca) = Self::top(state, a, a);
        let (db, cb) = Self::top(state, b, a);
        let forbidden = if da >= s - 1 {
            ca
        } else if db >= s - 1 {
            cb
        } else {
            Color::Green
        };
        BuilderMove::new(a, b, forbidden)
    }

    fn check_step(state: &GameState, s: usize, j: usize) -> Result<(), String> {
        let (a, b) = (2 * s - 4, 2 * s - 3);
        let limit = 2 * j + 2;
        let (da, _) = Self::top(state, a, limit);
        let (db, _) = Self::top(state, b, limit);
        if da > j + 2 || db > j + 2 {
            return Err(format!("level {s} step {j}: colour degree {da}/{db} exceeds {}", j + 2));
        }
        if da + db > 2 * j + 3 {
            return Err(format!("level {s} step {j}: D_a + D_b = {} exceeds {}", da + db, 2 * j + 3));
        }
        for x in [2 * j, 2 * j + 1] {
            if state.color(a, x) == state.color(b, x) {
                return Err(format!("level {s} step {j}: vertex {x} sees a and b in one colour"));
            }
        }
        Ok(())
    }

    fn check_level(state: &GameState, s: usize) -> Result<(), String> {
        let size = 2 * s - 2;
        for z in 0..size {
            let (d, c) = Self::top(state, z, size);
            if d >= s {
                return Err(format!("level {s}: vertex {z} has {d} {} edges", c.name()));
            }
        }
        Ok(())
    }
}

impl BuilderStrategy for StarBuilder {
    fn name(&self) -> String {
        format!("star({})", self.t)
    }

    fn next_move(&self, state: &GameState) -> Result<BuilderMove, GameError> {
        if state.n() != self.board_size() {
            return Err(GameError::StrategyUndefined(format!(
                "star builder for t={} needs K_{}, got K_{}",
                self.t,
                self.board_size(),
                state.n()
            )));
        }
        match self.slot(state.rounds()) {
            Some(StarSlot::Base) => Ok(BuilderMove::new(0, 1, Color::Green)),
            Some(StarSlot::Step { s, j, k }) => Ok(Self::step_move(state, s, j, k)),
            Some(StarSlot::Closing { s }) => Ok(Self::closing_move(state, s)),
            None => Err(GameError::StrategyUndefined("board is full".into())),
        }
    }

    fn audit(&self, state: &GameState) -> Result<(), String> {
        let r = state.rounds();
        if r == 0 {
            return Ok(());
        }
        match self.slot(r - 1) {
            Some(StarSlot::Step { s, j, k: 3 }) => Self::check_step(state, s, j),
            Some(StarSlot::Closing { s }) => Self::check_level(state, s),
            _ => Ok(()),
        }
    }
}

/// Builder's strategy for targets with a spanning tree that has three leaves
/// on one vertex: after `xy` (here `0-1`), every edge at `x` avoids one colour,
/// every edge at `y` avoids another, and the rest avoid the colour of `xy`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Tau3Builder;

pub fn tau3_tree_builder() -> Tau3Builder {
    Tau3Builder
}

impl Tau3Builder {
    /// Colour of `xy`, then the colours forbidden at `x` and at `y`.
    fn roles(state: &GameState) -> Option<[Color; 3]> {
        let first = state.color(0, 1)?;
        let [p, q] = first.others();
        Some([first, p, q])
    }

    /// Checks the final-colouring guarantee on a (partial) position.
    pub fn structure_holds(state: &GameState) -> Result<(), String> {
        let Some([first, at_x, at_y]) = Self::roles(state) else {
            return Ok(());
        };
        if state.color_degree(0, at_x) > 0 {
            return Err(format!("x has a {} edge", at_x.name()));
        }
        if state.color_degree(1, at_y) > 0 {
            return Err(format!("y has a {} edge", at_y.name()));
        }
        if let Some((u, v)) = state.class(first).edges().find(|&(u, _)| u > 1) {
            return Err(format!("{} edge {u}-{v} misses x and y", first.name()));
        }
        Ok(())
    }
}

impl BuilderStrategy for Tau3Builder {
    fn name(&self) -> String {
        "tau3".into()
    }

    fn next_move(&self, state: &GameState) -> Result<BuilderMove, GameError> {
        if state.n() < 2 {
            return Err(GameError::StrategyUndefined("board has no edge".into()));
        }
        let Some([first, at_x, at_y]) = Self::roles(state) else {
            return Ok(BuilderMove::new(0, 1, Color::Green));
        };
        let n = state.n();
        if let Some(v) = (2..n).find(|&v| !state.is_exposed(0, v)) {
            return Ok(BuilderMove::new(0, v, at_x));
        }
        if let Some(v) = (2..n).find(|&v| !state.is_exposed(1, v)) {
            return Ok(BuilderMove::new(1, v, at_y));
        }
        let (u, v) = next_unexposed(state)?;
        Ok(BuilderMove::new(u, v, first))
    }

    fn audit(&self, state: &GameState) -> Result<(), String> {
        Self::structure_holds(state)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::k3_matching_coloring;
    use crate::game::{play, Board, GreedyPainter, Player, RandomPainter, TwoColorPainter};
    use crate::graph::{make_clique, make_path, make_star};

    #[test]
    fn triangle_builder_beats_simple_painters() {
        let board = Board::new(5, make_clique(3).unwrap()).unwrap();
        let out = play(&board, &triangle_builder_n5(), &mut TwoColorPainter).unwrap();
        assert_eq!((out.winner, out.rounds), (Player::Builder, 10));
        let out = play(&board, &triangle_builder_n5(), &mut GreedyPainter).unwrap();
        assert_eq!(out.winner, Player::Builder);
        for seed in 0..2000 {
            let out = play(&board, &triangle_builder_n5(), &mut RandomPainter::new(seed)).unwrap();
            assert_eq!(out.winner, Player::Builder, "seed {seed}");
        }
    }

    #[test]
    fn triangle_builder_rejects_other_boards() {
        let board = Board::new(6, make_clique(3).unwrap()).unwrap();
        assert!(matches!(
            play(&board, &triangle_builder_n5(), &mut TwoColorPainter),
            Err(GameError::StrategyUndefined(_))
        ));
    }

    #[test]
    fn star_schedule_covers_the_board() {
        for t in 2..=7 {
            let sb = star_builder(t).unwrap();
            let m = crate::graph::pair_count(sb.board_size());
            assert!(sb.slot(m - 1).is_some(), "t={t}");
            assert!(sb.slot(m).is_none(), "t={t}");
        }
        assert!(star_builder(1).is_err());
    }

    #[test]
    fn star_builder_random_play() {
        for t in 3..=8 {
            let board = Board::new(2 * t - 2, make_star(t).unwrap()).unwrap();
            for seed in 0..40 {
                let out = play(&board, &star_builder(t).unwrap(), &mut RandomPainter::new(seed)).unwrap();
                assert_eq!(out.winner, Player::Builder, "t={t} seed={seed}");
            }
        }
        let wrong = Board::new(7, make_star(4).unwrap()).unwrap();
        assert!(play(&wrong, &star_builder(4).unwrap(), &mut TwoColorPainter).is_err());
    }

    #[test]
    fn tau3_structure_on_large_board() {
        let board = Board::new(50, make_path(50).unwrap()).unwrap();
        for seed in 0..3 {
            let out = play(&board, &tau3_tree_builder(), &mut RandomPainter::new(seed)).unwrap();
            assert_eq!(out.winner, Player::Builder);
            assert_eq!(out.rounds, 1225);
        }
    }

    #[test]
    fn offline_builder_follows_the_colouring() {
        let board = Board::new(4, make_clique(3).unwrap()).unwrap();
        let c = k3_matching_coloring();
        let out = play(&board, &offline_polychromatic_builder(c.clone()), &mut GreedyPainter).unwrap();
        assert_eq!(out.winner, Player::Builder);
        for r in &out.transcript {
            assert_eq!(Some(r.forbidden), c.color(r.edge.0, r.edge.1));
        }
        let small = offline_polychromatic_builder(EdgeColoring::complete(3, |_, _| Color::Blue));
        let board = Board::new(5, make_path(5).unwrap()).unwrap();
        let out = play(&board, &small, &mut TwoColorPainter).unwrap();
        assert_eq!(&out.transcript[..3].iter().map(|r| r.forbidden).collect::<Vec<_>>(), &[Color::Blue; 3]);
    }
}
