use petgraph::algo::maximum_matching;
use petgraph::graph::UnGraph;

use super::Graph;

/// Size of a maximum matching (general graphs, Edmonds/Gabow via petgraph).
pub fn maximum_matching_size(g: &Graph) -> usize {
    let mut pg: UnGraph<(), ()> = UnGraph::from_edges(g.edges().map(|(u, v)| (u as u32, v as u32)));
    while pg.node_count() < g.n() {
        pg.add_node(());
    }
    maximum_matching(&pg).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(g: &Graph) -> usize {
        fn rec(edges: &[(usize, usize)], used: &mut Vec<bool>, from: usize) -> usize {
            let mut best = 0;
            for i in from..edges.len() {
                let (u, v) = edges[i];
                if !used[u] && !used[v] {
                    used[u] = true;
                    used[v] = true;
                    best = best.max(1 + rec(edges, used, i + 1));
                    used[u] = false;
                    used[v] = false;
                }
            }
            best
        }
        let edges: Vec<_> = g.edges().collect();
        rec(&edges, &mut vec![false; g.n()], 0)
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut x: u64 = 12345;
        for n in 1..10 {
            for _ in 0..40 {
                let mut g = Graph::empty(n);
                for u in 0..n {
                    for v in u + 1..n {
                        x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        if (x >> 33) % 3 == 0 {
                            g.add_edge(u, v);
                        }
                    }
                }
                assert_eq!(maximum_matching_size(&g), brute_force(&g), "{g:?}");
            }
        }
    }
}
