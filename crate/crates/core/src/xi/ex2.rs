use super::{copy_edge_lists, XiError};
use crate::graph::{pair_count, PatternGraph};

/// Largest board `ex2_bruteforce` accepts.
pub const EX2_MAX_VERTICES: usize = 5;

/// Whether some red/blue split of `host` has no monochromatic copy.
fn two_colorable(host: u32, copies: &[u32]) -> bool {
    let mut red = host;
    loop {
        let blue = host & !red;
        if copies.iter().all(|&c| c & red != c && c & blue != c) {
            return true;
        }
        if red == 0 {
            return false;
        }
        red = (red - 1) & host;
    }
}

/// Two-colour Turán number `ex2(n, H)`: the most edges an `n`-vertex graph can
/// have while admitting a red/blue colouring with no monochromatic `H`.
/// Host graphs are scanned by decreasing edge count.
pub fn ex2_bruteforce(n: usize, h: &PatternGraph) -> Result<usize, XiError> {
    if n > EX2_MAX_VERTICES {
        return Err(XiError::TooLarge { n, edges: pair_count(n), limit: pair_count(EX2_MAX_VERTICES) });
    }
    if h.edge_count() == 0 {
        return Err(XiError::InvalidParameter("pattern must have an edge".into()));
    }
    let m = pair_count(n);
    let copies: Vec<u32> = copy_edge_lists(h, n)
        .iter()
        .map(|e| e.iter().fold(0u32, |acc, &i| acc | (1 << i)))
        .collect();
    for k in (0..=m).rev() {
        let hit = (0u32..1 << m)
            .filter(|g| g.count_ones() as usize == k)
            .any(|g| two_colorable(g, &copies));
        if hit {
            return Ok(k);
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_clique, make_matching, make_path, make_star};

    #[test]
    fn known_values() {
        assert_eq!(ex2_bruteforce(5, &make_clique(3).unwrap()).unwrap(), 10);
        for n in 2..=5 {
            assert_eq!(ex2_bruteforce(n, &make_clique(2).unwrap()).unwrap(), 0);
        }
        // Each colour class of a P3-free colouring is a matching: 2 + 2 on 4 vertices.
        assert_eq!(ex2_bruteforce(4, &make_path(3).unwrap()).unwrap(), 4);
        assert_eq!(ex2_bruteforce(5, &make_star(2).unwrap()).unwrap(), 4);
        // K4 is a triangle plus a star, and neither contains two disjoint edges.
        assert_eq!(ex2_bruteforce(4, &make_matching(2).unwrap()).unwrap(), 6);
        assert!(ex2_bruteforce(6, &make_clique(3).unwrap()).is_err());
    }
}
