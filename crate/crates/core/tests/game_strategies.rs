use std::sync::Arc;

use proptest::prelude::*;
use turnaround::coloring::{is_polychromatic, k4_grid_coloring, Color};
use turnaround::game::{
    f_bracket, offline_polychromatic_builder, play, ramsey_2color_check, replay, solve_exact, star_builder,
    tau3_tree_builder, triangle_builder_n5, two_color_painter, verify_builder_strategy, Board, BuilderMove,
    BuilderStrategy, FOptions, GameState, GreedyPainter, Player, RandomPainter, ScriptedPainter, SequentialBuilder,
    SolveOptions, solver_builder, Tau3Builder, VerifyOptions,
};
use turnaround::graph::{make_clique, make_double_star, make_path, make_star, PatternGraph};
use turnaround::xi::{compute_xi, XiOptions};

#[test]
fn tau3_builder_beats_every_painter_on_p7() {
    let board = Board::new(7, make_path(7).unwrap()).unwrap();
    let r = verify_builder_strategy(&tau3_tree_builder(), &board, VerifyOptions::default()).unwrap();
    assert!(r.holds, "{:?}", r.counterexample);
    assert_eq!(r.plays, 1 << 21);
}

#[test]
fn tau3_structure_against_random_painter() {
    let board = Board::new(50, make_path(50).unwrap()).unwrap();
    for seed in 0..5 {
        let mut state = GameState::new(board.clone());
        let builder = tau3_tree_builder();
        let mut painter = RandomPainter::new(seed);
        while !state.is_over() {
            let mv = builder.next_move(&state).unwrap();
            let c = turnaround::game::PainterStrategy::choose(&mut painter, &state, &mv).unwrap();
            state.apply(&mv, c).unwrap();
            Tau3Builder::structure_holds(&state).unwrap();
        }
        assert!(!state.painter_won());
    }
}

#[test]
fn triangle_builder_random_trials() {
    let board = Board::new(5, make_clique(3).unwrap()).unwrap();
    for seed in 0..100_000 {
        let out = play(&board, &triangle_builder_n5(), &mut RandomPainter::new(seed)).unwrap();
        assert_eq!(out.winner, Player::Builder, "seed {seed}");
    }
}

#[test]
fn star_builder_on_larger_boards() {
    for t in 5..=9 {
        let board = Board::new(2 * t - 2, make_star(t).unwrap()).unwrap();
        let builder = star_builder(t).unwrap();
        for seed in 0..200 {
            let out = play(&board, &builder, &mut RandomPainter::new(seed)).unwrap();
            assert_eq!(out.winner, Player::Builder, "t={t} seed={seed}");
        }
        assert_eq!(play(&board, &builder, &mut GreedyPainter).unwrap().winner, Player::Builder);
    }
}

/// Every Painter line through the first `depth` rounds, finished by `finish`.
fn survives_to_depth(
    board: &Arc<Board>,
    builder: &dyn BuilderStrategy,
    depth: usize,
    finish: &mut dyn FnMut(&mut GameState),
) -> u64 {
    fn rec(
        state: &mut GameState,
        builder: &dyn BuilderStrategy,
        depth: usize,
        finish: &mut dyn FnMut(&mut GameState),
    ) -> u64 {
        if state.painter_won() {
            panic!("Painter won: {:?}", state.history());
        }
        if depth == 0 || state.is_over() {
            let mut end = state.clone();
            finish(&mut end);
            assert!(!end.painter_won(), "Painter won: {:?}", end.history());
            return 1;
        }
        let mv = builder.next_move(state).unwrap();
        let mut lines = 0;
        for c in mv.forbidden.others() {
            state.apply(&mv, c).unwrap();
            lines += rec(state, builder, depth - 1, finish);
            state.undo();
        }
        lines
    }
    let mut state = GameState::new(board.clone());
    rec(&mut state, builder, depth, finish)
}

#[test]
fn offline_grid_builder_on_k9() {
    let c = k4_grid_coloring();
    let k4 = make_clique(4).unwrap();
    assert!(is_polychromatic(&c, &k4));
    let board = Board::new(9, k4).unwrap();
    let builder = offline_polychromatic_builder(c);
    for seed in 0..300 {
        assert_eq!(play(&board, &builder, &mut RandomPainter::new(seed)).unwrap().winner, Player::Builder);
    }
    let mut seed = 0;
    let lines = survives_to_depth(&board, &builder, 14, &mut |s: &mut GameState| {
        seed += 1;
        let mut p = RandomPainter::new(seed);
        while !s.is_over() {
            let mv = builder.next_move(s).unwrap();
            let c = turnaround::game::PainterStrategy::choose(&mut p, s, &mv).unwrap();
            s.apply(&mv, c).unwrap();
        }
    });
    assert_eq!(lines, 1 << 14);
}

#[test]
fn offline_builder_with_certified_colourings_never_loses() {
    for h in [make_clique(3).unwrap(), make_star(3).unwrap(), make_path(4).unwrap()] {
        let xi = compute_xi(&h, 6, XiOptions::default()).unwrap();
        let witness = xi.witness.unwrap();
        let board = Board::new(witness.n(), h.clone()).unwrap();
        let r = verify_builder_strategy(&offline_polychromatic_builder(witness), &board, VerifyOptions::default())
            .unwrap();
        assert!(r.holds, "{}", h.label());
    }
}

#[test]
fn sandwich_bounds() {
    for h in [
        make_clique(3).unwrap(),
        make_star(2).unwrap(),
        make_star(3).unwrap(),
        make_path(3).unwrap(),
        make_path(4).unwrap(),
    ] {
        let xi = compute_xi(&h, 7, XiOptions::default()).unwrap().xi.exact().unwrap();
        let f = f_bracket(&h, FOptions::default()).unwrap();
        let f = f.exact().unwrap_or_else(|| panic!("{}: {:?}", h.label(), f));
        let ramsey = (1..=6).find(|&n| ramsey_2color_check(n, &h).unwrap().holds).unwrap();
        assert!(xi + 1 <= f && f <= ramsey, "{}: xi={xi} f={f} R={ramsey}", h.label());
    }
}

#[test]
fn solver_agrees_with_other_certificates() {
    let k3 = make_clique(3).unwrap();
    let board = Board::new(5, k3.clone()).unwrap();
    assert!(verify_builder_strategy(&triangle_builder_n5(), &board, VerifyOptions::default()).unwrap().holds);
    assert_eq!(solve_exact(5, &k3, SolveOptions::default()).unwrap().winner, Player::Builder);
    for h in [make_star(2).unwrap(), make_path(3).unwrap(), make_star(3).unwrap(), make_path(4).unwrap()] {
        for n in 2..=4 {
            if ramsey_2color_check(n, &h).unwrap().holds {
                let v = solve_exact(n, &h, SolveOptions::default()).unwrap();
                assert_eq!(v.winner, Player::Painter, "{} on K{n}", h.label());
                assert!(v.rounds.unwrap() <= turnaround::graph::pair_count(n));
                let out = play(&Board::new(n, h.clone()).unwrap(), &SequentialBuilder::default(), &mut two_color_painter())
                    .unwrap();
                assert_eq!(out.winner, Player::Painter);
            }
        }
    }
    let board = Board::new(4, make_star(3).unwrap()).unwrap();
    assert!(verify_builder_strategy(&star_builder(3).unwrap(), &board, VerifyOptions::default()).unwrap().holds);
    assert_eq!(solve_exact(4, &make_star(3).unwrap(), SolveOptions::default()).unwrap().winner, Player::Builder);
}

#[test]
fn double_star_board_is_left_to_the_solver() {
    let h = make_double_star(2, 2).unwrap();
    assert_eq!(h.max_leaf_count(), Some(2));
    let opts = SolveOptions { budget: Some(5_000_000), vertex_symmetry: true };
    let v = solve_exact(6, &h, opts).unwrap();
    eprintln!("double star S2,2 on K6: {:?} {:?} ({} positions)", v.winner, v.rounds, v.positions);
    let poly = turnaround::xi::polychromatic_search(6, &h, turnaround::xi::SearchMode::Backtracking, None).unwrap();
    assert!(poly.verdict.is_refuted());
    assert_eq!(v.winner, Player::Builder);
    // The offline strategy is unavailable, so check the solver's own moves
    // against every Painter.
    let builder = solver_builder(6, &h, opts).unwrap();
    let board = Board::new(6, h).unwrap();
    let r = verify_builder_strategy(&builder, &board, VerifyOptions::default()).unwrap();
    assert!(r.holds, "{:?}", r.counterexample);
    assert_eq!(r.plays, 1 << 15);
}

fn transcript_strategy() -> impl Strategy<Value = (usize, Vec<bool>, u8)> {
    (3usize..=7, prop::collection::vec(any::<bool>(), 0..30), 0u8..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn replay_is_bit_for_bit((n, bits, f) in transcript_strategy()) {
        let h: PatternGraph = make_path(4).unwrap();
        let board = Board::new(n, h).unwrap();
        let builder = SequentialBuilder { forbidden: Color::from_index(f as usize) };
        let out = play(&board, &builder, &mut ScriptedPainter::new(bits)).unwrap();
        let again = replay(&board, &out.transcript).unwrap();
        prop_assert_eq!(again.winner, out.winner);
        prop_assert_eq!(again.rounds, out.rounds);
        prop_assert_eq!(serde_json::to_string(&again.transcript).unwrap(), serde_json::to_string(&out.transcript).unwrap());
        for r in &out.transcript {
            prop_assert_ne!(r.chosen, r.forbidden);
        }
        let mono = Color::ALL.iter().any(|&c| turnaround::graph::contains_copy(board.target(), &out.final_coloring.class(c)));
        prop_assert_eq!(mono, out.winner == Player::Painter);
        if out.winner == Player::Builder {
            prop_assert_eq!(out.rounds, turnaround::graph::pair_count(n));
        }
    }

    #[test]
    fn illegal_moves_are_rejected(n in 3usize..7, seed in 0u64..1000) {
        let board = Board::new(n, make_clique(3).unwrap()).unwrap();
        let out = play(&board, &SequentialBuilder::default(), &mut RandomPainter::new(seed)).unwrap();
        let mut bad = out.transcript.clone();
        if let Some(r) = bad.first_mut() {
            r.chosen = r.forbidden;
        }
        prop_assert!(replay(&board, &bad).is_err());
        let mut state = GameState::new(board.clone());
        state.apply(&BuilderMove::new(0, 1, Color::Red), Color::Blue).unwrap();
        prop_assert!(state.apply(&BuilderMove::new(0, 1, Color::Red), Color::Blue).is_err());
    }
}

/// Connected graphs on `n` vertices without isolated vertices, one per
/// isomorphism class.
fn connected_graphs(n: usize) -> Vec<turnaround::graph::Graph> {
    use turnaround::graph::{edge_endpoints, is_connected, Graph};
    let m = turnaround::graph::pair_count(n);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    let perms = {
        let mut all = vec![];
        let mut p: Vec<usize> = (0..n).collect();
        fn rec(k: usize, p: &mut Vec<usize>, all: &mut Vec<Vec<usize>>) {
            if k == p.len() {
                all.push(p.clone());
            }
            for i in k..p.len() {
                p.swap(k, i);
                rec(k + 1, p, all);
                p.swap(k, i);
            }
        }
        rec(0, &mut p, &mut all);
        all
    };
    for mask in 1u32..1 << m {
        let edges: Vec<(usize, usize)> = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| edge_endpoints(n, i)).collect();
        let g = Graph::from_edges(n, edges.iter().copied()).unwrap();
        if !is_connected(&g) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| edges.iter().fold(0u32, |a, &(u, v)| a | 1 << turnaround::graph::edge_index(n, p[u], p[v])))
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(g);
        }
    }
    out
}

#[test]
fn painter_on_own_vertex_count() {
    assert_eq!(connected_graphs(4).len(), 6);
    assert_eq!(connected_graphs(5).len(), 21);
    for n in 2..=5 {
        for g in connected_graphs(n) {
            let h = PatternGraph::new(g.clone());
            let v = solve_exact(n, &h, SolveOptions::default()).unwrap();
            let small = n <= 3 && g.edge_count() == n - 1;
            let expected = if small { Player::Painter } else { Player::Builder };
            assert_eq!(v.winner, expected, "{:?}", g.edges().collect::<Vec<_>>());
            if v.winner == Player::Builder {
                let builder = solver_builder(n, &h, SolveOptions::default()).unwrap();
                let r = verify_builder_strategy(&builder, &Board::new(n, h).unwrap(), VerifyOptions::default()).unwrap();
                assert!(r.holds);
            }
        }
    }
}
