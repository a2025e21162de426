use std::fmt;
use std::sync::OnceLock;

use super::{invariants, Graph};

/// Named family a pattern graph was built from. `Custom` for anything else.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Clique(usize),
    Path(usize),
    Matching(usize),
    Star(usize),
    Broom(usize, usize),
    DoubleStar(usize, usize),
    Custom,
}

/// A target graph `H` together with cached invariants.
///
/// Cheap invariants are computed eagerly; domination number, chromatic number
/// and the automorphism group are computed on first use.
#[derive(Clone)]
pub struct PatternGraph {
    graph: Graph,
    family: Family,
    max_degree: usize,
    is_connected: bool,
    is_tree: bool,
    is_bipartite: bool,
    max_leaf_count: Option<usize>,
    domination: OnceLock<usize>,
    chromatic: OnceLock<usize>,
    automorphisms: OnceLock<Vec<Vec<usize>>>,
}

impl PatternGraph {
    pub fn new(graph: Graph) -> Self {
        Self::with_family(graph, Family::Custom)
    }

    pub(crate) fn with_family(graph: Graph, family: Family) -> Self {
        let is_connected = invariants::is_connected(&graph);
        PatternGraph {
            family,
            max_degree: invariants::max_degree(&graph),
            is_tree: is_connected && graph.edge_count() + 1 == graph.n(),
            is_bipartite: invariants::is_bipartite(&graph),
            max_leaf_count: invariants::max_leaf_count(&graph),
            is_connected,
            graph,
            domination: OnceLock::new(),
            chromatic: OnceLock::new(),
            automorphisms: OnceLock::new(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.n()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected
    }

    pub fn is_tree(&self) -> bool {
        self.is_tree
    }

    pub fn is_bipartite(&self) -> bool {
        self.is_bipartite
    }

    /// `ℓ(T)`; only defined for trees.
    pub fn max_leaf_count(&self) -> Option<usize> {
        self.max_leaf_count
    }

    pub fn domination_number(&self) -> usize {
        *self.domination.get_or_init(|| invariants::domination_number(&self.graph))
    }

    pub fn chromatic_number(&self) -> usize {
        *self.chromatic.get_or_init(|| invariants::chromatic_number(&self.graph))
    }

    /// All automorphisms of the graph restricted to its non-isolated vertices,
    /// as permutations `perm[v]` of the full vertex range (isolated vertices fixed).
    pub fn automorphisms(&self) -> &[Vec<usize>] {
        self.automorphisms.get_or_init(|| super::embed::automorphisms(&self.graph))
    }

    /// Short human-readable name, e.g. `K3`, `broom:3,4`.
    pub fn label(&self) -> String {
        match self.family {
            Family::Clique(t) => format!("K{t}"),
            Family::Path(t) => format!("P{t}"),
            Family::Matching(t) => format!("M{t}"),
            Family::Star(t) => format!("star:{t}"),
            Family::Broom(s, t) => format!("broom:{s},{t}"),
            Family::DoubleStar(k, l) => format!("dstar:{k},{l}"),
            Family::Custom => format!("graph(n={}, m={})", self.graph.n(), self.graph.edge_count()),
        }
    }
}

impl fmt::Debug for PatternGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PatternGraph({}, {:?})", self.label(), self.graph)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_broom, make_double_star, make_path};

    #[test]
    fn cached_invariants_match_recomputation() {
        for h in [
            make_path(6).unwrap(),
            make_broom(3, 4).unwrap(),
            make_double_star(2, 2).unwrap(),
        ] {
            let first = (h.domination_number(), h.chromatic_number());
            let fresh = PatternGraph::new(h.graph().clone());
            assert_eq!(first, (fresh.domination_number(), fresh.chromatic_number()));
            assert_eq!(first, (h.domination_number(), h.chromatic_number()));
            assert_eq!(h.max_degree(), fresh.max_degree());
            assert_eq!(h.max_leaf_count(), fresh.max_leaf_count());
        }
    }

    #[test]
    fn automorphism_group_sizes() {
        assert_eq!(make_path(5).unwrap().automorphisms().len(), 2);
        assert_eq!(make_double_star(2, 2).unwrap().automorphisms().len(), 8);
        assert_eq!(make_broom(3, 4).unwrap().automorphisms().len(), 6);
    }
}
