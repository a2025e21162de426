use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use super::{Board, BuilderMove, BuilderStrategy, GameError, GameState, Player};
use crate::coloring::Color;
use crate::graph::{edge_index, pair_count, PatternGraph};

/// Boards solved without a budget.
pub const SOLVE_FREE_EDGES: usize = 10;
/// Largest board the 4-valued state key can hold.
const SOLVE_MAX_EDGES: usize = 31;
const INF: u8 = u8::MAX;

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    /// Positions to expand before giving up.
    pub budget: Option<u64>,
    /// Canonicalize under board-vertex permutations too (only for `n <= 6`).
    pub vertex_symmetry: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { budget: None, vertex_symmetry: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GameValue {
    pub n: usize,
    pub target: String,
    pub winner: Player,
    /// Rounds Painter needs under optimal play, when Painter wins.
    pub rounds: Option<usize>,
    /// Distinct canonical positions evaluated.
    pub positions: u64,
}

struct Solver {
    m: usize,
    board: Arc<Board>,
    /// Edge permutations induced by the vertex permutations used for keys.
    perms: Vec<Vec<usize>>,
    memo: HashMap<u64, u8>,
    limit: u64,
    digits: Vec<u8>,
    classes: [u64; 3],
}

fn vertex_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

impl Solver {
    /// Smallest base-4 key over the symmetry group, with colours relabelled
    /// by first appearance.
    fn key(&self) -> u64 {
        let mut best = u64::MAX;
        let mut permuted = [0u8; SOLVE_MAX_EDGES];
        for p in &self.perms {
            for (e, &d) in self.digits.iter().enumerate() {
                permuted[p[e]] = d;
            }
            let mut relabel = [0u8; 4];
            let mut next = 1;
            let mut key = 0u64;
            for &d in permuted[..self.m].iter() {
                let d = if d == 0 {
                    0
                } else {
                    if relabel[d as usize] == 0 {
                        relabel[d as usize] = next;
                        next += 1;
                    }
                    relabel[d as usize]
                };
                key = key * 4 + d as u64;
            }
            best = best.min(key);
        }
        best
    }

    fn completes(&self, e: usize, c: usize) -> bool {
        let class = self.classes[c] | 1 << e;
        self.board
            .copy_masks_through(e)
            .expect("solver boards keep masks")
            .iter()
            .any(|&k| k & class == k)
    }

    /// Rounds until Painter wins from here under optimal play, or `INF`.
    fn value(&mut self, exposed: usize) -> Result<u8, GameError> {
        if exposed == self.m {
            return Ok(INF);
        }
        let key = self.key();
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        if self.memo.len() as u64 >= self.limit {
            return Err(GameError::Budget(self.limit));
        }
        let mut best = 0u8;
        'edges: for e in 0..self.m {
            if self.digits[e] != 0 {
                continue;
            }
            let wins = [self.completes(e, 0), self.completes(e, 1), self.completes(e, 2)];
            for f in 0..3 {
                let allowed = [(f + 1) % 3, (f + 2) % 3];
                if allowed.iter().any(|&c| wins[c]) {
                    best = best.max(1);
                    continue;
                }
                let mut painter = INF;
                for c in allowed {
                    self.digits[e] = c as u8 + 1;
                    self.classes[c] |= 1 << e;
                    let v = self.value(exposed + 1);
                    self.digits[e] = 0;
                    self.classes[c] &= !(1 << e);
                    let v = v?;
                    painter = painter.min(v.saturating_add(1));
                    // Builder already has a line at least this good.
                    if painter <= best {
                        break;
                    }
                }
                best = best.max(painter);
                if best == INF {
                    break 'edges;
                }
            }
        }
        self.memo.insert(key, best);
        Ok(best)
    }

    fn new(n: usize, h: &PatternGraph, opts: SolveOptions) -> Result<Solver, GameError> {
        let m = pair_count(n);
        if m > SOLVE_FREE_EDGES && opts.budget.is_none() {
            return Err(GameError::InvalidBoard(format!(
                "K_{n} has {m} edges; boards above {SOLVE_FREE_EDGES} edges need a budget"
            )));
        }
        if m > SOLVE_MAX_EDGES {
            return Err(GameError::InvalidBoard(format!("K_{n} is too large for the exact solver")));
        }
        if opts.budget == Some(0) {
            return Err(GameError::Budget(0));
        }
        let board = Board::new(n, h.clone())?;
        if board.copy_masks_through(0).is_none() {
            return Err(GameError::InvalidBoard("too many copies of the target".into()));
        }
        let perms = if opts.vertex_symmetry && n <= 6 {
            vertex_permutations(n)
                .into_iter()
                .map(|p| {
                    (0..m)
                        .map(|e| {
                            let (u, v) = board.endpoints(e);
                            edge_index(n, p[u], p[v])
                        })
                        .collect()
                })
                .collect()
        } else {
            vec![(0..m).collect()]
        };
        Ok(Solver {
            m,
            board,
            perms,
            memo: HashMap::new(),
            limit: opts.budget.unwrap_or(u64::MAX),
            digits: vec![0; m],
            classes: [0; 3],
        })
    }

    fn load(&mut self, state: &GameState) {
        self.classes = [0; 3];
        for e in 0..self.m {
            self.digits[e] = match state.color_at(e) {
                Some(c) => {
                    self.classes[c.index()] |= 1 << e;
                    c.index() as u8 + 1
                }
                None => 0,
            };
        }
    }

    /// Builder's move with the largest value; the first one on ties.
    fn best_move(&mut self, exposed: usize) -> Result<(usize, usize), GameError> {
        let mut best = None;
        for e in 0..self.m {
            if self.digits[e] != 0 {
                continue;
            }
            for f in 0..3 {
                let mut painter = INF;
                for c in [(f + 1) % 3, (f + 2) % 3] {
                    if self.completes(e, c) {
                        painter = 1;
                        break;
                    }
                    self.digits[e] = c as u8 + 1;
                    self.classes[c] |= 1 << e;
                    let v = self.value(exposed + 1);
                    self.digits[e] = 0;
                    self.classes[c] &= !(1 << e);
                    painter = painter.min(v?.saturating_add(1));
                }
                if best.is_none_or(|(_, _, b)| painter > b) {
                    best = Some((e, f, painter));
                }
                if painter == INF {
                    return Ok((e, f));
                }
            }
        }
        best.map(|(e, f, _)| (e, f)).ok_or_else(|| GameError::StrategyUndefined("board is full".into()))
    }
}

/// Builder playing the solver's choice in every position.
pub struct SolverBuilder {
    solver: Mutex<Solver>,
}

pub fn solver_builder(n: usize, h: &PatternGraph, opts: SolveOptions) -> Result<SolverBuilder, GameError> {
    Ok(SolverBuilder { solver: Mutex::new(Solver::new(n, h, opts)?) })
}

impl BuilderStrategy for SolverBuilder {
    fn name(&self) -> String {
        "solver".into()
    }

    fn next_move(&self, state: &GameState) -> Result<BuilderMove, GameError> {
        let mut solver = self.solver.lock().expect("solver lock");
        if state.n() != solver.board.n() {
            return Err(GameError::StrategyUndefined("solver was built for another board".into()));
        }
        solver.load(state);
        let (e, f) = solver.best_move(state.rounds())?;
        let (u, v) = solver.board.endpoints(e);
        Ok(BuilderMove::new(u, v, Color::from_index(f)))
    }
}

/// Exact value of the game on `K_n` by memoized minimax: Builder maximizes
/// the number of rounds Painter needs (surviving the whole board is best),
/// Painter minimizes it. Boards with more than ten edges need a budget.
pub fn solve_exact(n: usize, h: &PatternGraph, opts: SolveOptions) -> Result<GameValue, GameError> {
    let mut solver = Solver::new(n, h, opts)?;
    let v = solver.value(0)?;
    Ok(GameValue {
        n,
        target: h.label(),
        winner: if v == INF { Player::Builder } else { Player::Painter },
        rounds: (v != INF).then_some(v as usize),
        positions: solver.memo.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_clique, make_path, make_star};

    fn solve(n: usize, h: PatternGraph) -> GameValue {
        solve_exact(n, &h, SolveOptions::default()).unwrap()
    }

    #[test]
    fn small_boards() {
        assert_eq!(solve(5, make_clique(3).unwrap()).winner, Player::Builder);
        let v = solve(3, make_star(2).unwrap());
        assert_eq!((v.winner, v.rounds), (Player::Painter, Some(3)));
        assert_eq!(solve(2, make_star(2).unwrap()).winner, Player::Builder);
        assert_eq!(solve(2, make_clique(2).unwrap()).rounds, Some(1));
        assert_eq!(solve(4, make_clique(3).unwrap()).winner, Player::Builder);
    }

    #[test]
    fn symmetry_does_not_change_values() {
        for h in [make_clique(3).unwrap(), make_path(4).unwrap(), make_star(3).unwrap(), make_path(3).unwrap()] {
            for n in 2..=5 {
                let a = solve_exact(n, &h, SolveOptions::default()).unwrap();
                let b = solve_exact(n, &h, SolveOptions { budget: None, vertex_symmetry: false }).unwrap();
                assert_eq!((a.winner, a.rounds), (b.winner, b.rounds), "{} on K{n}", h.label());
                assert!(a.positions <= b.positions);
            }
        }
    }

    #[test]
    fn large_boards_need_a_budget() {
        let k3 = make_clique(3).unwrap();
        assert!(solve_exact(6, &k3, SolveOptions::default()).is_err());
        let opts = SolveOptions { budget: Some(5), vertex_symmetry: true };
        assert_eq!(solve_exact(6, &k3, opts).unwrap_err(), GameError::Budget(5));
    }

    #[test]
    fn permutation_count() {
        assert_eq!(vertex_permutations(4).len(), 24);
        assert_eq!(vertex_permutations(0).len(), 1);
    }
}
