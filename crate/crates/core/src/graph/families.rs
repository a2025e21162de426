use super::{Family, Graph, GraphError, PatternGraph};

fn require(cond: bool, msg: impl Into<String>) -> Result<(), GraphError> {
    if cond {
        Ok(())
    } else {
        Err(GraphError::InvalidParameter(msg.into()))
    }
}

/// `K_t`.
pub fn make_clique(t: usize) -> Result<PatternGraph, GraphError> {
    require(t >= 1, "clique needs t >= 1")?;
    Ok(PatternGraph::with_family(Graph::complete(t), Family::Clique(t)))
}

/// `P_t`, the path on `t` vertices `0-1-...-(t-1)`.
pub fn make_path(t: usize) -> Result<PatternGraph, GraphError> {
    require(t >= 1, "path needs t >= 1")?;
    let g = Graph::from_edges(t, (1..t).map(|i| (i - 1, i)))?;
    Ok(PatternGraph::with_family(g, Family::Path(t)))
}

/// `M_t`: `t` disjoint edges `{2i, 2i+1}`.
pub fn make_matching(t: usize) -> Result<PatternGraph, GraphError> {
    require(t >= 1, "matching needs t >= 1")?;
    let g = Graph::from_edges(2 * t, (0..t).map(|i| (2 * i, 2 * i + 1)))?;
    Ok(PatternGraph::with_family(g, Family::Matching(t)))
}

/// `K_{1,t}` with center 0.
pub fn make_star(t: usize) -> Result<PatternGraph, GraphError> {
    require(t >= 1, "star needs t >= 1")?;
    let g = Graph::from_edges(t + 1, (1..=t).map(|i| (0, i)))?;
    Ok(PatternGraph::with_family(g, Family::Star(t)))
}

/// Broom `B_{s,t}`: a path `0-1-...-(t-1)` plus `s` leaves on vertex 0.
pub fn make_broom(s: usize, t: usize) -> Result<PatternGraph, GraphError> {
    require(s >= 1 && t >= 1, "broom needs s, t >= 1")?;
    let mut g = Graph::empty(s + t);
    for i in 1..t {
        g.add_edge(i - 1, i);
    }
    for leaf in t..t + s {
        g.add_edge(0, leaf);
    }
    Ok(PatternGraph::with_family(g, Family::Broom(s, t)))
}

/// Double star `S_{k,l}`: centers 0 and 1 joined by an edge, with `k` and `l`
/// leaves respectively.
pub fn make_double_star(k: usize, l: usize) -> Result<PatternGraph, GraphError> {
    require(k >= 1 && l >= 1, "double star needs k, l >= 1")?;
    let mut g = Graph::empty(k + l + 2);
    g.add_edge(0, 1);
    for leaf in 2..2 + k {
        g.add_edge(0, leaf);
    }
    for leaf in 2 + k..2 + k + l {
        g.add_edge(1, leaf);
    }
    Ok(PatternGraph::with_family(g, Family::DoubleStar(k, l)))
}

/// Cycle `C_t` (t >= 3).
pub fn make_cycle(t: usize) -> Result<PatternGraph, GraphError> {
    require(t >= 3, "cycle needs t >= 3")?;
    let g = Graph::from_edges(t, (0..t).map(|i| (i, (i + 1) % t)))?;
    Ok(PatternGraph::new(g))
}

/// Part sizes of `T(n, k)`: the first `n mod k` parts get one extra vertex.
pub fn turan_part_sizes(n: usize, k: usize) -> Vec<usize> {
    (0..k).map(|i| n / k + usize::from(i < n % k)).collect()
}

/// Part of vertex `v` in `T(n, k)`; parts are contiguous vertex ranges.
pub fn turan_part_of(n: usize, k: usize, v: usize) -> usize {
    let big = n / k + 1;
    let extra = n % k;
    if v < extra * big {
        v / big
    } else {
        extra + (v - extra * big) / (n / k)
    }
}

/// Turán graph `T(n, k)`: complete `k`-partite with parts differing by at most one.
pub fn make_turan(n: usize, k: usize) -> Result<Graph, GraphError> {
    require(k >= 1 && k <= n, "turan needs 1 <= k <= n")?;
    let part: Vec<usize> = (0..n).map(|v| turan_part_of(n, k, v)).collect();
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if part[u] != part[v] {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::pair_count;

    fn binom2(x: usize) -> usize {
        pair_count(x)
    }

    #[test]
    fn family_sizes_match_closed_forms() {
        for t in 1..9 {
            assert_eq!(make_clique(t).unwrap().graph().edge_count(), binom2(t));
            assert_eq!(make_path(t).unwrap().graph().edge_count(), t - 1);
            assert_eq!(make_matching(t).unwrap().graph().edge_count(), t);
            assert_eq!(make_star(t).unwrap().graph().n(), t + 1);
            for s in 1..5 {
                let b = make_broom(s, t).unwrap();
                assert_eq!(b.graph().n(), s + t);
                assert_eq!(b.graph().edge_count(), s + t - 1);
                let d = make_double_star(s, t).unwrap();
                assert_eq!(d.graph().n(), s + t + 2);
                assert_eq!(d.graph().edge_count(), s + t + 1);
            }
        }
        for n in 1..20 {
            for k in 1..=n {
                let g = make_turan(n, k).unwrap();
                let sizes = turan_part_sizes(n, k);
                assert_eq!(sizes.iter().sum::<usize>(), n);
                assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
                let missing: usize = sizes.iter().map(|&s| binom2(s)).sum();
                assert_eq!(g.edge_count(), binom2(n) - missing);
            }
        }
    }

    #[test]
    fn rejects_empty_definitions() {
        assert!(make_clique(0).is_err());
        assert!(make_path(0).is_err());
        assert!(make_matching(0).is_err());
        assert!(make_broom(0, 3).is_err());
        assert!(make_double_star(2, 0).is_err());
        assert!(make_turan(3, 4).is_err());
        assert!(make_turan(3, 0).is_err());
    }

    #[test]
    fn named_examples() {
        let b = make_broom(3, 3).unwrap();
        assert_eq!(b.graph().n(), 6);
        assert!(b.is_tree());
        assert_eq!(b.max_degree(), 4);

        let s = make_double_star(2, 2).unwrap();
        assert_eq!(s.graph().n(), 6);
        assert!(s.is_tree());
        let deg = s.graph().degrees();
        assert_eq!((deg[0], deg[1]), (3, 3));
        assert!(s.graph().has_edge(0, 1));

        assert!(make_turan(4, 4).unwrap().is_complete());
    }
}
