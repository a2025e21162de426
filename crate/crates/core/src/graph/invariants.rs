use super::{BitSet, Graph};

pub fn max_degree(g: &Graph) -> usize {
    g.degrees().into_iter().max().unwrap_or(0)
}

/// Connected components as sorted vertex lists, ordered by smallest vertex.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let adj = g.adjacency();
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for v in adj[u].iter() {
                if !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                    stack.push(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn is_connected(g: &Graph) -> bool {
    g.n() > 0 && components(g).len() == 1
}

pub fn is_bipartite(g: &Graph) -> bool {
    let adj = g.adjacency();
    let mut side = vec![u8::MAX; g.n()];
    for s in 0..g.n() {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for v in adj[u].iter() {
                if side[v] == u8::MAX {
                    side[v] = 1 - side[u];
                    stack.push(v);
                } else if side[v] == side[u] {
                    return false;
                }
            }
        }
    }
    true
}

/// Largest number of leaves adjacent to a single vertex. `None` unless `g` is a tree.
pub fn max_leaf_count(g: &Graph) -> Option<usize> {
    if !(is_connected(g) && g.edge_count() + 1 == g.n()) {
        return None;
    }
    let deg = g.degrees();
    Some(
        (0..g.n())
            .map(|v| g.neighbors(v).filter(|&u| deg[u] == 1).count())
            .max()
            .unwrap_or(0),
    )
}

fn closed_neighborhoods(g: &Graph) -> Vec<BitSet> {
    let mut rows = g.adjacency();
    for (v, row) in rows.iter_mut().enumerate() {
        row.insert(v);
    }
    rows
}

/// Whether some set of at most `k` vertices dominates `g`.
///
/// Branches on the lowest undominated vertex: one of its closed neighbours must
/// be in the set, so the search is complete.
pub fn has_dominating_set(g: &Graph, k: usize) -> bool {
    let closed = closed_neighborhoods(g);
    let reach = closed.iter().map(BitSet::count_ones).max().unwrap_or(1);
    let dominated = BitSet::new(g.n());
    dominate(&closed, reach, dominated, k)
}

fn dominate(closed: &[BitSet], reach: usize, dominated: BitSet, k: usize) -> bool {
    let n = closed.len();
    let undominated = n - dominated.count_ones();
    let Some(v) = (0..n).find(|&v| !dominated.contains(v)) else {
        return true;
    };
    if k == 0 || undominated > k * reach {
        return false;
    }
    let mut options: Vec<usize> = closed[v].iter().collect();
    // Try the vertices that cover the most new ground first.
    options.sort_by_key(|&u| {
        std::cmp::Reverse(closed[u].iter().filter(|&w| !dominated.contains(w)).count())
    });
    options.into_iter().any(|u| {
        let mut next = dominated.clone();
        next.union_with(&closed[u]);
        dominate(closed, reach, next, k - 1)
    })
}

/// Size of a smallest dominating set, trying sizes in increasing order.
pub fn domination_number(g: &Graph) -> usize {
    (0..=g.n()).find(|&k| has_dominating_set(g, k)).unwrap_or(g.n())
}

/// Whether `g` has a vertex cover with at most `k` vertices (bounded search tree).
pub fn has_vertex_cover(g: &Graph, k: usize) -> bool {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut removed = vec![false; g.n()];
    cover(&edges, &mut removed, k)
}

fn cover(edges: &[(usize, usize)], removed: &mut [bool], k: usize) -> bool {
    let Some(&(u, v)) = edges.iter().find(|&&(u, v)| !removed[u] && !removed[v]) else {
        return true;
    };
    if k == 0 {
        return false;
    }
    for w in [u, v] {
        removed[w] = true;
        let ok = cover(edges, removed, k - 1);
        removed[w] = false;
        if ok {
            return true;
        }
    }
    false
}

/// Smallest vertex cover size if it is at most `limit`.
pub fn min_vertex_cover_up_to(g: &Graph, limit: usize) -> Option<usize> {
    (0..=limit).find(|&k| has_vertex_cover(g, k))
}

/// Exact chromatic number by backtracking over `k = 1, 2, ...`.
///
/// Intended for pattern graphs; cost grows quickly past a dozen vertices.
pub fn chromatic_number(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    if g.edge_count() == 0 {
        return 1;
    }
    let adj = g.adjacency();
    let deg = g.degrees();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(deg[v]));
    let lower = if is_bipartite(g) { 2 } else { 3 };
    (lower..=n)
        .find(|&k| {
            let mut colour = vec![usize::MAX; n];
            colourable(&adj, &order, 0, k, 0, &mut colour)
        })
        .unwrap_or(n)
}

fn colourable(
    adj: &[BitSet],
    order: &[usize],
    pos: usize,
    k: usize,
    used: usize,
    colour: &mut [usize],
) -> bool {
    if pos == order.len() {
        return true;
    }
    let v = order[pos];
    // New colours are interchangeable: only open one new colour class.
    for c in 0..k.min(used + 1) {
        if adj[v].iter().all(|u| colour[u] != c) {
            colour[v] = c;
            if colourable(adj, order, pos + 1, k, used.max(c + 1), colour) {
                return true;
            }
            colour[v] = usize::MAX;
        }
    }
    false
}
