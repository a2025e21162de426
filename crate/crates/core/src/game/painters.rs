use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{BuilderMove, GameError, GameState, PainterStrategy};
use crate::coloring::Color;

/// Never uses green: red when allowed, blue otherwise.
#[derive(Clone, Copy, Debug, Default)]
pub struct TwoColorPainter;

pub fn two_color_painter() -> TwoColorPainter {
    TwoColorPainter
}

impl PainterStrategy for TwoColorPainter {
    fn name(&self) -> String {
        "two-color".into()
    }

    fn choose(&mut self, _: &GameState, mv: &BuilderMove) -> Result<Color, GameError> {
        Ok(if mv.forbidden == Color::Red { Color::Blue } else { Color::Red })
    }
}

/// Uniform choice between the two allowed colours.
pub struct RandomPainter {
    rng: ChaCha8Rng,
    seed: u64,
}

impl RandomPainter {
    pub fn new(seed: u64) -> RandomPainter {
        RandomPainter { rng: ChaCha8Rng::seed_from_u64(seed), seed }
    }
}

impl PainterStrategy for RandomPainter {
    fn name(&self) -> String {
        format!("random(seed={})", self.seed)
    }

    fn choose(&mut self, _: &GameState, mv: &BuilderMove) -> Result<Color, GameError> {
        Ok(mv.forbidden.others()[self.rng.random_range(0..2)])
    }
}

/// Plays `others()[bit]` for a fixed bit sequence, then bit 0.
#[derive(Clone, Debug, Default)]
pub struct ScriptedPainter {
    bits: Vec<bool>,
    pos: usize,
}

impl ScriptedPainter {
    pub fn new(bits: Vec<bool>) -> ScriptedPainter {
        ScriptedPainter { bits, pos: 0 }
    }
}

impl PainterStrategy for ScriptedPainter {
    fn name(&self) -> String {
        "scripted".into()
    }

    fn choose(&mut self, _: &GameState, mv: &BuilderMove) -> Result<Color, GameError> {
        let bit = self.bits.get(self.pos).copied().unwrap_or(false);
        self.pos += 1;
        Ok(mv.forbidden.others()[bit as usize])
    }
}

/// Wins at once when an allowed colour completes the target; otherwise takes
/// the allowed colour with more edges at the two endpoints.
#[derive(Clone, Copy, Debug, Default)]
pub struct GreedyPainter;

impl PainterStrategy for GreedyPainter {
    fn name(&self) -> String {
        "greedy".into()
    }

    fn choose(&mut self, state: &GameState, mv: &BuilderMove) -> Result<Color, GameError> {
        let (u, v) = mv.edge;
        let e = state.board().index(u, v);
        let allowed = mv.forbidden.others();
        for c in allowed {
            let mut class = state.class(c).clone();
            class.add_edge(u, v);
            if state.board().completes_copy(&class, e) {
                return Ok(c);
            }
        }
        let weight = |c: Color| state.color_degree(u, c) + state.color_degree(v, c);
        Ok(if weight(allowed[1]) > weight(allowed[0]) { allowed[1] } else { allowed[0] })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{play, Board, SequentialBuilder};
    use crate::graph::make_path;

    #[test]
    fn painters_respect_the_forbidden_colour() {
        let board = Board::new(5, make_path(4).unwrap()).unwrap();
        let state = GameState::new(board.clone());
        let mut painters: Vec<Box<dyn PainterStrategy>> = vec![
            Box::new(TwoColorPainter),
            Box::new(RandomPainter::new(3)),
            Box::new(ScriptedPainter::new(vec![true, false, true])),
            Box::new(GreedyPainter),
        ];
        for p in painters.iter_mut() {
            for f in Color::ALL {
                for _ in 0..4 {
                    let c = p.choose(&state, &BuilderMove::new(0, 1, f)).unwrap();
                    assert_ne!(c, f, "{}", p.name());
                }
            }
            assert!(play(&board, &SequentialBuilder::default(), p.as_mut()).is_ok());
        }
    }

    #[test]
    fn random_painter_is_reproducible() {
        let board = Board::new(6, make_path(5).unwrap()).unwrap();
        let a = play(&board, &SequentialBuilder::default(), &mut RandomPainter::new(11)).unwrap();
        let b = play(&board, &SequentialBuilder::default(), &mut RandomPainter::new(11)).unwrap();
        assert_eq!(a.transcript, b.transcript);
    }
}
