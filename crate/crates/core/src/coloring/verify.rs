use rayon::prelude::*;

use super::EdgeColoring;
use crate::graph::{find_copy, maximum_matching_size, Embedding, PatternGraph};

/// Colour-set masks of the three two-colour unions.
const PAIRS: [u8; 3] = [0b011, 0b101, 0b110];

/// A copy of `h` that uses at most two colours, if one exists.
///
/// Such a copy lives entirely inside the union of two colour classes, so the
/// three unions are searched independently; the first pair in the order
/// `RB, RG, BG` that contains a copy supplies the witness.
pub fn find_bicolored_copy(c: &EdgeColoring, h: &PatternGraph) -> Option<Embedding> {
    if h.vertex_count() > c.n() {
        return None;
    }
    PAIRS.par_iter().find_map_first(|&mask| find_copy(h, &c.class_union(mask)))
}

/// Whether every copy of `h` in the host sees all three colours.
pub fn is_polychromatic(c: &EdgeColoring, h: &PatternGraph) -> bool {
    find_bicolored_copy(c, h).is_none()
}

/// First vertex whose colour degrees spread by more than one.
pub fn find_unbalanced_vertex(c: &EdgeColoring) -> Option<usize> {
    c.degree_profile().iter().position(|p| {
        let (lo, hi) = (p.iter().min().unwrap(), p.iter().max().unwrap());
        hi - lo > 1
    })
}

pub fn is_balanced(c: &EdgeColoring) -> bool {
    find_unbalanced_vertex(c).is_none()
}

/// Largest matching inside a union of two colour classes.
pub fn max_bicolored_matching(c: &EdgeColoring) -> usize {
    PAIRS.iter().map(|&m| maximum_matching_size(&c.class_union(m))).max().unwrap_or(0)
}

/// Largest star inside a union of two colour classes.
pub fn max_bicolored_star(c: &EdgeColoring) -> usize {
    c.degree_profile()
        .iter()
        .map(|p| p.iter().sum::<usize>() - p.iter().min().unwrap())
        .max()
        .unwrap_or(0)
}
