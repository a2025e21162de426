use std::time::Instant;

use rayon::prelude::*;

use super::{coloring_from_digits, copy_edge_lists, Method, SearchOutcome, Verdict, XiError};
use crate::graph::{pair_count, PatternGraph};

/// Largest `C(n,2)` the plain enumeration accepts (`3^15 ≈ 1.4e7`).
pub const EXHAUSTIVE_MAX_EDGES: usize = 15;

/// Decodes state `k` into per-edge colour digits. With `reduce`, edge 0 is
/// red and edge 1 is red or blue; the other edges take base-3 digits.
fn decode(k: u64, m: usize, reduce: bool, out: &mut [u8]) {
    let mut k = k;
    let mut start = 0;
    if reduce {
        if m >= 1 {
            out[0] = 0;
        }
        if m >= 2 {
            out[1] = (k % 2) as u8;
            k /= 2;
        }
        start = m.min(2);
    }
    for d in out.iter_mut().take(m).skip(start) {
        *d = (k % 3) as u8;
        k /= 3;
    }
}

fn state_count(m: usize, reduce: bool) -> u64 {
    let full = 3u64.pow(m as u32);
    match (reduce, m) {
        (false, _) | (true, 0) => full,
        (true, 1) => 1,
        (true, _) => 2 * 3u64.pow(m as u32 - 2),
    }
}

fn polychromatic_masks(copies: &[u32], digits: &[u8]) -> bool {
    let mut class = [0u32; 3];
    for (i, &d) in digits.iter().enumerate() {
        class[d as usize] |= 1 << i;
    }
    copies.iter().all(|&c| class.iter().all(|&k| c & k != 0))
}

fn run(n: usize, h: &PatternGraph, reduce: bool) -> Result<SearchOutcome, XiError> {
    let start = Instant::now();
    let m = pair_count(n);
    if m > EXHAUSTIVE_MAX_EDGES {
        return Err(XiError::TooLarge { n, edges: m, limit: EXHAUSTIVE_MAX_EDGES });
    }
    let copies: Vec<u32> = copy_edge_lists(h, n)
        .iter()
        .map(|e| e.iter().fold(0u32, |acc, &i| acc | (1 << i)))
        .collect();
    let total = state_count(m, reduce);
    let hit = (0..total).into_par_iter().find_first(|&k| {
        let mut digits = [0u8; EXHAUSTIVE_MAX_EDGES];
        decode(k, m, reduce, &mut digits);
        polychromatic_masks(&copies, &digits[..m])
    });
    let (verdict, nodes) = match hit {
        Some(k) => {
            let mut digits = vec![0u8; m];
            decode(k, m, reduce, &mut digits);
            (Verdict::Found { coloring: coloring_from_digits(n, &digits) }, k + 1)
        }
        None => (Verdict::Refuted, total),
    };
    let reductions = if reduce {
        vec!["colour permutations: first edge red, second edge red or blue (6-fold)".to_string()]
    } else {
        Vec::new()
    };
    Ok(SearchOutcome {
        n,
        method: Method::Exhaustive,
        verdict,
        nodes,
        copies: copies.len(),
        reductions,
        elapsed: start.elapsed(),
    })
}

/// Scans every 3-colouring of `K_n` up to colour permutation and returns the
/// first polychromatic one in scan order, or `Refuted`.
pub fn exhaustive_polychromatic(n: usize, h: &PatternGraph) -> Result<SearchOutcome, XiError> {
    run(n, h, true)
}

/// Same scan without the colour-permutation reduction.
pub fn exhaustive_polychromatic_unreduced(n: usize, h: &PatternGraph) -> Result<SearchOutcome, XiError> {
    run(n, h, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_polychromatic;
    use crate::graph::{make_clique, make_matching, make_path, make_star};

    #[test]
    fn state_counts() {
        assert_eq!(state_count(6, true), 2 * 81);
        assert_eq!(state_count(6, false), 729);
        assert_eq!(state_count(1, true), 1);
        assert_eq!(state_count(0, true), 1);
    }

    #[test]
    fn triangle_boards() {
        let k3 = make_clique(3).unwrap();
        let found = exhaustive_polychromatic(4, &k3).unwrap();
        match &found.verdict {
            Verdict::Found { coloring } => assert!(is_polychromatic(coloring, &k3)),
            v => panic!("expected a witness, got {v:?}"),
        }
        let refuted = exhaustive_polychromatic(5, &k3).unwrap();
        assert_eq!(refuted.verdict, Verdict::Refuted);
        assert_eq!(refuted.nodes, 2 * 3u64.pow(8));
        assert_eq!(refuted.copies, 10);
    }

    #[test]
    fn reduction_is_sound_on_small_boards() {
        for h in [make_clique(3).unwrap(), make_path(4).unwrap(), make_star(3).unwrap(), make_matching(2).unwrap()] {
            for n in h.vertex_count()..=5 {
                let a = exhaustive_polychromatic(n, &h).unwrap().verdict.is_found();
                let b = exhaustive_polychromatic_unreduced(n, &h).unwrap().verdict.is_found();
                assert_eq!(a, b, "{} on K{n}", h.label());
            }
        }
    }

    #[test]
    fn path_six_is_refuted() {
        let out = exhaustive_polychromatic(6, &make_path(6).unwrap()).unwrap();
        assert_eq!(out.verdict, Verdict::Refuted);
    }

    #[test]
    fn rejects_large_boards() {
        assert!(matches!(
            exhaustive_polychromatic(7, &make_clique(3).unwrap()),
            Err(XiError::TooLarge { edges: 21, .. })
        ));
    }

    #[test]
    fn boards_without_copies_are_vacuous() {
        let out = exhaustive_polychromatic(3, &make_clique(4).unwrap()).unwrap();
        assert!(out.verdict.is_found());
        assert_eq!(out.copies, 0);
    }
}
