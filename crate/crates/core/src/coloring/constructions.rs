use serde::Serialize;

use super::decomposition::{cycle_edges, one_factorization, walecki_decomposition};
use super::{Color, ColoringError, EdgeColoring};
use crate::graph::{edge_index, make_turan, pair_count, turan_part_of, Graph};

/// Which construction `balanced_coloring` uses for a given `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BalancedCase {
    /// `n` even: perfect matchings in three near-equal groups.
    EvenFactorization,
    /// `n = 6k + 1`: Hamiltonian cycles in three equal groups.
    CyclesEqual,
    /// `n = 6k + 3`: as above, one leftover cycle coloured `R` then `B/G`.
    CyclesLeftover,
    /// `n = 6k + 5`: even case on `n - 1` plus one extra vertex.
    ExtraVertex,
}

pub fn balanced_case(n: usize) -> BalancedCase {
    match n % 6 {
        1 => BalancedCase::CyclesEqual,
        3 => BalancedCase::CyclesLeftover,
        5 => BalancedCase::ExtraVertex,
        _ => BalancedCase::EvenFactorization,
    }
}

/// Splits `count` items into three groups whose sizes differ by at most one,
/// larger groups first, and returns the group of each item.
fn near_equal_groups(count: usize) -> Vec<usize> {
    let (q, r) = (count / 3, count % 3);
    let sizes = [q + usize::from(r > 0), q + usize::from(r > 1), q];
    sizes.iter().enumerate().flat_map(|(g, &s)| std::iter::repeat_n(g, s)).collect()
}

fn even_balanced(n: usize) -> Vec<Option<Color>> {
    let mut colors = vec![None; pair_count(n)];
    let factors = one_factorization(n).expect("even n");
    for (f, g) in factors.iter().zip(near_equal_groups(n - 1)) {
        for &(u, v) in f {
            colors[edge_index(n, u, v)] = Some(Color::from_index(g));
        }
    }
    colors
}

/// A 3-edge-colouring of `K_n` in which every vertex sees each colour
/// `⌊(n-1)/3⌋` or `⌈(n-1)/3⌉` times.
pub fn balanced_coloring(n: usize) -> Result<EdgeColoring, ColoringError> {
    if n < 3 {
        return Err(ColoringError::InvalidParameter(format!("balanced colouring needs n >= 3, got {n}")));
    }
    let host = Graph::complete(n);
    let colors = match balanced_case(n) {
        BalancedCase::EvenFactorization => even_balanced(n),
        BalancedCase::CyclesEqual | BalancedCase::CyclesLeftover => {
            let cycles = walecki_decomposition(n)?;
            let k = (n - 1) / 6;
            let mut colors = vec![None; pair_count(n)];
            for (i, cyc) in cycles.iter().enumerate() {
                let edges = cycle_edges(cyc);
                if i < 3 * k {
                    for (u, v) in edges {
                        colors[edge_index(n, u, v)] = Some(Color::from_index(i / k));
                    }
                } else {
                    // Leftover cycle: one red edge, then blue and green alternately.
                    for (j, (u, v)) in edges.into_iter().enumerate() {
                        let c = match j {
                            0 => Color::Red,
                            j if j % 2 == 1 => Color::Blue,
                            _ => Color::Green,
                        };
                        colors[edge_index(n, u, v)] = Some(c);
                    }
                }
            }
            colors
        }
        BalancedCase::ExtraVertex => {
            let m = n - 1;
            let k = (m - 4) / 6;
            let inner = even_balanced(m);
            let mut colors = vec![None; pair_count(n)];
            for u in 0..m {
                for v in u + 1..m {
                    colors[edge_index(n, u, v)] = inner[edge_index(m, u, v)];
                }
            }
            // New vertex: 2k+1 red, 2k+1 green, 2k+2 blue, by ascending neighbour.
            for u in 0..m {
                let c = if u < 2 * k + 1 {
                    Color::Red
                } else if u < 4 * k + 2 {
                    Color::Green
                } else {
                    Color::Blue
                };
                colors[edge_index(n, u, m)] = Some(c);
            }
            colors
        }
    };
    EdgeColoring::from_indexed(host, colors)
}

/// Sizes `(|X1|, |X2|, |X3|)` of the three vertex ranges used by
/// [`matching_polychromatic`].
pub fn matching_polychromatic_parts(n: usize) -> (usize, usize, usize) {
    let (x1, x2) = (n / 7, 2 * n / 7);
    (x1, x2, n - x1 - x2)
}

/// Colouring of `K_n` in which every matching on `⌊3n/7⌋ + 1` edges sees all
/// three colours. `X1 = [0, n/7)`, `X2` the next `⌊2n/7⌋` vertices, `X3` the
/// rest; edges meeting `X1` are red, other edges meeting `X2` blue, the rest green.
pub fn matching_polychromatic(n: usize) -> Result<EdgeColoring, ColoringError> {
    if n < 3 {
        return Err(ColoringError::InvalidParameter(format!("matching colouring needs n >= 3, got {n}")));
    }
    let (x1, x2, _) = matching_polychromatic_parts(n);
    Ok(EdgeColoring::complete(n, |u, _| {
        // u < v, so u is the endpoint closest to X1.
        if u < x1 {
            Color::Red
        } else if u < x1 + x2 {
            Color::Blue
        } else {
            Color::Green
        }
    }))
}

/// `K4` with its three perfect matchings in three different colours.
pub fn k3_matching_coloring() -> EdgeColoring {
    let factors = one_factorization(4).expect("4 is even");
    let mut colors = vec![None; pair_count(4)];
    for (i, f) in factors.iter().enumerate() {
        for &(u, v) in f {
            colors[edge_index(4, u, v)] = Some(Color::from_index(i));
        }
    }
    EdgeColoring::from_indexed(Graph::complete(4), colors).expect("total colouring")
}

/// `K9` on the grid `{0,1,2}^2` (vertex `3x + y`): red when the `x`
/// coordinates agree, blue when the `y` coordinates agree, green otherwise.
pub fn k4_grid_coloring() -> EdgeColoring {
    EdgeColoring::complete(9, |u, v| {
        if u / 3 == v / 3 {
            Color::Red
        } else if u % 3 == v % 3 {
            Color::Blue
        } else {
            Color::Green
        }
    })
}

/// Vertex `0` is the special vertex and `1..=a` the set `V_a`: edges at `0`
/// are red, other edges meeting `V_a` blue, the rest green.
pub fn split_coloring(n: usize, a: usize) -> Result<EdgeColoring, ColoringError> {
    if a < 1 || a + 3 > n {
        return Err(ColoringError::InvalidParameter(format!("split colouring needs 1 <= a <= n-3, got n={n}, a={a}")));
    }
    Ok(EdgeColoring::complete(n, |u, _| {
        if u == 0 {
            Color::Red
        } else if u <= a {
            Color::Blue
        } else {
            Color::Green
        }
    }))
}

/// Blow-up of a colouring of `K_k` to the Turán graph `T(n, k)`: the edge
/// between parts `i` and `j` inherits the colour of `ij`.
pub fn turan_inherited_coloring(n: usize, base: &EdgeColoring) -> Result<EdgeColoring, ColoringError> {
    let k = base.n();
    if !base.host().is_complete() {
        return Err(ColoringError::InvalidParameter("base colouring must be on a complete graph".into()));
    }
    if k == 0 || k > n {
        return Err(ColoringError::InvalidParameter(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    let host = make_turan(n, k).map_err(|e| ColoringError::InvalidParameter(e.to_string()))?;
    Ok(EdgeColoring::from_fn(host, |u, v| {
        base.color(turan_part_of(n, k, u), turan_part_of(n, k, v)).expect("distinct parts")
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{find_bicolored_copy, is_balanced, is_polychromatic};
    use crate::graph::{make_clique, make_matching, make_path};

    #[test]
    fn cases_by_residue() {
        assert_eq!(balanced_case(7), BalancedCase::CyclesEqual);
        assert_eq!(balanced_case(9), BalancedCase::CyclesLeftover);
        assert_eq!(balanced_case(11), BalancedCase::ExtraVertex);
        assert_eq!(balanced_case(8), BalancedCase::EvenFactorization);
        assert!(balanced_coloring(2).is_err());
    }

    #[test]
    fn balanced_small_profiles() {
        for p in balanced_coloring(4).unwrap().degree_profile() {
            assert_eq!(p, [1, 1, 1]);
        }
        for p in balanced_coloring(7).unwrap().degree_profile() {
            assert_eq!(p, [2, 2, 2]);
        }
        for p in balanced_coloring(9).unwrap().degree_profile() {
            let mut s = p;
            s.sort_unstable();
            assert_eq!(s, [2, 3, 3]);
        }
    }

    #[test]
    fn balanced_up_to_300() {
        for n in 3..=300 {
            let c = balanced_coloring(n).unwrap();
            assert!(is_balanced(&c), "n={n}");
            let (lo, hi) = ((n - 1) / 3, (n - 1).div_ceil(3));
            for p in c.degree_profile() {
                assert!(p.iter().all(|&d| lo <= d && d <= hi), "n={n} {p:?}");
            }
        }
    }

    #[test]
    fn even_groups_of_sizes_3_2_2() {
        assert_eq!(near_equal_groups(7), vec![0, 0, 0, 1, 1, 2, 2]);
        let c = balanced_coloring(8).unwrap();
        assert!(is_balanced(&c));
        assert_eq!(c.color_counts(), [12, 8, 8]);
    }

    #[test]
    fn matching_construction_parts() {
        assert_eq!(matching_polychromatic_parts(7), (1, 2, 4));
        let c = matching_polychromatic(7).unwrap();
        assert!(is_polychromatic(&c, &make_matching(4).unwrap()));
        assert!(find_bicolored_copy(&c, &make_matching(3).unwrap()).is_some());
    }

    #[test]
    fn small_named_colourings() {
        let k4 = k3_matching_coloring();
        assert_eq!(k4.color_counts(), [2, 2, 2]);
        assert!(is_polychromatic(&k4, &make_clique(3).unwrap()));
        // Two adjacent edges of K4 lie in different perfect matchings.
        assert!(!is_polychromatic(&k4, &make_path(3).unwrap()));

        let grid = k4_grid_coloring();
        assert_eq!(grid.color_counts(), [9, 9, 18]);
        assert!(is_polychromatic(&grid, &make_clique(4).unwrap()));
        assert!(!is_polychromatic(&grid, &make_clique(3).unwrap()));
    }

    #[test]
    fn turan_blowup() {
        let base = k3_matching_coloring();
        assert_eq!(turan_inherited_coloring(4, &base).unwrap(), base);
        let c = turan_inherited_coloring(12, &base).unwrap();
        assert_eq!(c.host().edge_count(), 54);
        assert!(is_polychromatic(&c, &make_clique(3).unwrap()));
        assert!(turan_inherited_coloring(3, &base).is_err());
    }

    #[test]
    fn split_ranges() {
        assert!(split_coloring(6, 0).is_err());
        assert!(split_coloring(6, 4).is_err());
        let c = split_coloring(6, 3).unwrap();
        assert_eq!(c.color(0, 5), Some(Color::Red));
        assert_eq!(c.color(3, 4), Some(Color::Blue));
        assert_eq!(c.color(4, 5), Some(Color::Green));
    }
}
