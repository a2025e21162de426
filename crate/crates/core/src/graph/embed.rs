//! Backtracking subgraph embedder.
//!
//! A copy of `H` in a host is an edge subset of the host isomorphic to `H`.
//! Labelled embeddings that differ by an automorphism of `H` give the same
//! copy, so the enumerator keeps only the orbit-minimal embedding (or, when
//! the automorphism group is large, deduplicates on the edge set).

use std::collections::HashSet;
use std::ops::Range;

use super::{
    edge_index, has_vertex_cover, invariants, maximum_matching_size, min_vertex_cover_up_to,
    BitSet, Family, Graph, PatternGraph,
};

/// One copy of `H` inside a host graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Embedding {
    /// `map[v]` is the host vertex that pattern vertex `v` lands on (injective).
    pub map: Vec<usize>,
    /// Host edge indices covering `E(H)`, sorted ascending.
    pub edges: Vec<usize>,
}

struct Plan {
    order: Vec<usize>,
    back: Vec<Vec<usize>>,
    deg: Vec<usize>,
    isolated: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

impl Plan {
    /// Placement order: `roots` first, then repeatedly the unplaced vertex with
    /// the most placed neighbours (ties: higher degree, then lower index).
    fn new(h: &Graph, roots: &[usize]) -> Plan {
        let n = h.n();
        let deg = h.degrees();
        let isolated: Vec<usize> = (0..n).filter(|&v| deg[v] == 0).collect();
        let active = n - isolated.len();
        let mut placed = vec![false; n];
        let mut pos_of = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(active);
        for &r in roots {
            placed[r] = true;
            pos_of[r] = order.len();
            order.push(r);
        }
        while order.len() < active {
            let next = (0..n)
                .filter(|&v| !placed[v] && deg[v] > 0)
                .max_by_key(|&v| {
                    let linked = h.neighbors(v).filter(|&u| placed[u]).count();
                    (linked, deg[v], std::cmp::Reverse(v))
                })
                .expect("unplaced vertex");
            placed[next] = true;
            pos_of[next] = order.len();
            order.push(next);
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| h.neighbors(v).map(|u| pos_of[u]).filter(|&p| p < i).collect())
            .collect();
        let edges = h.edges().collect();
        Plan { deg: order.iter().map(|&v| deg[v]).collect(), order, back, isolated, edges }
    }
}

enum Dedupe {
    None,
    /// Automorphisms expressed on placement positions: `perm[i]` is the
    /// position of `sigma(order[i])`.
    Orbit(Vec<Vec<usize>>),
    Seen(HashSet<Vec<usize>>),
}

/// Streaming enumerator over copies of a pattern in a host, in a fixed
/// deterministic order.
pub struct CopyIter {
    plan: Plan,
    host_n: usize,
    adj: Vec<BitSet>,
    host_deg: Vec<usize>,
    images: Vec<usize>,
    cands: Vec<Vec<usize>>,
    cursor: Vec<usize>,
    assigned: Vec<bool>,
    used: Vec<bool>,
    depth: usize,
    fixed: usize,
    range: Range<usize>,
    dedupe: Dedupe,
    done: bool,
    emitted_empty: bool,
    pattern_n: usize,
}

impl CopyIter {
    fn build(h: &Graph, host: &Graph, roots: &[(usize, usize)], dedupe: Dedupe, range: Range<usize>) -> CopyIter {
        let root_vertices: Vec<usize> = roots.iter().map(|r| r.0).collect();
        let plan = Plan::new(h, &root_vertices);
        let k = plan.order.len();
        let host_n = host.n();
        let mut it = CopyIter {
            host_n,
            adj: host.adjacency(),
            host_deg: host.degrees(),
            images: vec![usize::MAX; k],
            cands: vec![Vec::new(); k],
            cursor: vec![0; k],
            assigned: vec![false; k],
            used: vec![false; host_n],
            depth: roots.len(),
            fixed: roots.len(),
            range,
            dedupe,
            done: h.n() > host_n,
            emitted_empty: false,
            pattern_n: h.n(),
            plan,
        };
        for (i, &(_, image)) in roots.iter().enumerate() {
            it.images[i] = image;
            it.used[image] = true;
        }
        if !it.done && it.fixed < k {
            it.fill_candidates(it.fixed);
        }
        it
    }

    fn fill_candidates(&mut self, d: usize) {
        let need = self.plan.deg[d];
        let lo = self.range.start;
        let mut out = Vec::new();
        if self.plan.back[d].is_empty() {
            out.extend((lo..self.host_n).filter(|&x| !self.used[x] && self.host_deg[x] >= need));
        } else {
            let mut row = self.adj[self.images[self.plan.back[d][0]]].clone();
            for &b in &self.plan.back[d][1..] {
                row.intersect_with(&self.adj[self.images[b]]);
            }
            out.extend(row.iter().filter(|&x| x >= lo && !self.used[x] && self.host_deg[x] >= need));
        }
        self.cands[d] = out;
        self.cursor[d] = 0;
    }

    fn accept(&mut self) -> Option<Embedding> {
        let min_image = self.images.iter().copied().min().unwrap_or(0);
        if !self.range.contains(&min_image) {
            return None;
        }
        if let Dedupe::Orbit(perms) = &self.dedupe {
            for perm in perms {
                for (i, &p) in perm.iter().enumerate() {
                    let (a, b) = (self.images[p], self.images[i]);
                    if a < b {
                        return None;
                    }
                    if a > b {
                        break;
                    }
                }
            }
        }
        let emb = self.materialize();
        if let Dedupe::Seen(seen) = &mut self.dedupe {
            if !seen.insert(emb.edges.clone()) {
                return None;
            }
        }
        Some(emb)
    }

    fn materialize(&self) -> Embedding {
        let mut map = vec![usize::MAX; self.pattern_n];
        for (i, &v) in self.plan.order.iter().enumerate() {
            map[v] = self.images[i];
        }
        let mut spare = (0..self.host_n).filter(|&x| !self.images.contains(&x));
        for &v in &self.plan.isolated {
            map[v] = spare.next().expect("host too small");
        }
        let mut edges: Vec<usize> =
            self.plan.edges.iter().map(|&(a, b)| edge_index(self.host_n, map[a], map[b])).collect();
        edges.sort_unstable();
        Embedding { map, edges }
    }
}

impl Iterator for CopyIter {
    type Item = Embedding;

    fn next(&mut self) -> Option<Embedding> {
        let k = self.plan.order.len();
        if self.done {
            return None;
        }
        if k == 0 {
            // Edgeless pattern: exactly one (empty) copy.
            self.done = true;
            if self.emitted_empty {
                return None;
            }
            self.emitted_empty = true;
            return Some(self.materialize());
        }
        loop {
            let d = self.depth;
            if d == k {
                self.depth = k - 1;
                if let Some(e) = self.accept() {
                    return Some(e);
                }
                continue;
            }
            if d < self.fixed {
                self.done = true;
                return None;
            }
            if self.assigned[d] {
                self.used[self.images[d]] = false;
                self.assigned[d] = false;
            }
            if self.cursor[d] < self.cands[d].len() {
                let c = self.cands[d][self.cursor[d]];
                self.cursor[d] += 1;
                self.images[d] = c;
                self.used[c] = true;
                self.assigned[d] = true;
                if d + 1 < k {
                    self.fill_candidates(d + 1);
                }
                self.depth = d + 1;
            } else if d == self.fixed {
                self.done = true;
                return None;
            } else {
                self.depth = d - 1;
            }
        }
    }
}

const ORBIT_DEDUPE_LIMIT: usize = 5_000;

fn dedupe_for(h: &PatternGraph, order: &[usize]) -> Dedupe {
    let auts = h.automorphisms();
    if auts.len() > ORBIT_DEDUPE_LIMIT {
        return Dedupe::Seen(HashSet::new());
    }
    let mut pos_of = vec![usize::MAX; h.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        pos_of[v] = i;
    }
    let perms = auts
        .iter()
        .filter(|p| p.iter().enumerate().any(|(v, &w)| v != w))
        .map(|p| order.iter().map(|&v| pos_of[p[v]]).collect())
        .collect();
    Dedupe::Orbit(perms)
}

/// Every copy of `h` in `host`, each distinct edge subset exactly once.
pub fn enumerate_copies(h: &PatternGraph, host: &Graph) -> CopyIter {
    enumerate_copies_in_range(h, host, 0..host.n())
}

/// Copies whose smallest (non-isolated) mapped vertex lies in `range`; the
/// ranges of a partition of `0..n` partition the copies.
pub fn enumerate_copies_in_range(h: &PatternGraph, host: &Graph, range: Range<usize>) -> CopyIter {
    let order = Plan::new(h.graph(), &[]).order;
    let dedupe = dedupe_for(h, &order);
    CopyIter::build(h.graph(), host, &[], dedupe, range)
}

/// All labelled embeddings of a graph's non-isolated part into itself.
pub(crate) fn automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    CopyIter::build(g, g, &[], Dedupe::None, 0..g.n()).map(|e| e.map).collect()
}

fn generic_contains(h: &Graph, host: &Graph) -> bool {
    CopyIter::build(h, host, &[], Dedupe::None, 0..host.n()).next().is_some()
}

fn has_clique(adj: &[BitSet], cands: BitSet, need: usize) -> bool {
    if need == 0 {
        return true;
    }
    if cands.count_ones() < need {
        return false;
    }
    let verts: Vec<usize> = cands.iter().collect();
    let mut remaining = cands;
    for v in verts {
        if remaining.count_ones() < need {
            return false;
        }
        remaining.remove(v);
        let mut next = remaining.clone();
        next.intersect_with(&adj[v]);
        if has_clique(adj, next, need - 1) {
            return true;
        }
    }
    false
}

/// Necessary conditions shared by the copy tests; `false` means no copy exists.
fn passes_filters(h: &PatternGraph, host: &Graph) -> bool {
    let hg = h.graph();
    if hg.edge_count() > host.edge_count() || hg.n() > host.n() {
        return false;
    }
    let h_deg = hg.degrees();
    let host_deg = host.degrees();
    let h_active = h_deg.iter().filter(|&&d| d > 0).count();
    if h_active > host_deg.iter().filter(|&&d| d > 0).count() {
        return false;
    }
    if h.is_connected() && hg.edge_count() > 0 {
        if !invariants::components(host).iter().any(|c| c.len() >= hg.n()) {
            return false;
        }
    }
    if let Some(cover) = min_vertex_cover_up_to(host, 3) {
        if !has_vertex_cover(hg, cover) {
            return false;
        }
    }
    true
}

/// Whether `host` has a subgraph isomorphic to `h`.
pub fn contains_copy(h: &PatternGraph, host: &Graph) -> bool {
    if h.edge_count() == 0 {
        return h.vertex_count() <= host.n();
    }
    if !passes_filters(h, host) {
        return false;
    }
    match h.family() {
        Family::Star(t) => invariants::max_degree(host) >= t,
        Family::Matching(t) => maximum_matching_size(host) >= t,
        Family::Clique(t) => {
            let mut all = BitSet::new(host.n());
            all.fill();
            has_clique(&host.adjacency(), all, t)
        }
        _ => generic_contains(h.graph(), host),
    }
}

/// Some copy of `h` in `host`, or `None`. The fast-path tests run first so a
/// negative answer is cheap whenever they apply.
pub fn find_copy(h: &PatternGraph, host: &Graph) -> Option<Embedding> {
    if h.vertex_count() > host.n() || (h.edge_count() > 0 && !contains_copy(h, host)) {
        return None;
    }
    CopyIter::build(h.graph(), host, &[], Dedupe::None, 0..host.n()).next()
}

/// Whether `host` has a copy of `h` that uses the host edge `{x, y}`.
pub fn contains_copy_through(h: &PatternGraph, host: &Graph, x: usize, y: usize) -> bool {
    if !host.has_edge(x, y) || !passes_filters(h, host) {
        return false;
    }
    let hg = h.graph();
    // Try one representative edge per automorphism orbit of E(H).
    let mut seen = HashSet::new();
    for (p, q) in hg.edges() {
        let orbit_rep = h
            .automorphisms()
            .iter()
            .take(ORBIT_DEDUPE_LIMIT)
            .map(|s| {
                let (a, b) = (s[p], s[q]);
                (a.min(b), a.max(b))
            })
            .min()
            .unwrap_or((p, q));
        if !seen.insert(orbit_rep) {
            continue;
        }
        for (a, b) in [(x, y), (y, x)] {
            let mut it = CopyIter::build(hg, host, &[(p, a), (q, b)], Dedupe::None, 0..host.n());
            if it.next().is_some() {
                return true;
            }
        }
    }
    false
}
