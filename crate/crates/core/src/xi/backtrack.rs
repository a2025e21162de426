use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use super::{coloring_from_digits, copy_edge_lists, Method, SearchOutcome, Verdict, XiError};
use crate::graph::{edge_index, pair_count, PatternGraph};

const NONE: u8 = u8::MAX;
const ALL: u8 = 0b111;
/// Nodes a worker counts locally before publishing to the shared counter.
const FLUSH: u64 = 1024;

struct Problem {
    m: usize,
    copies: Vec<Vec<u32>>,
    by_edge: Vec<Vec<u32>>,
    /// Static tie-break rank: edges in more copies first, then by index.
    rank: Vec<usize>,
}

impl Problem {
    fn new(n: usize, h: &PatternGraph) -> Problem {
        let m = pair_count(n);
        let copies: Vec<Vec<u32>> = copy_edge_lists(h, n)
            .into_iter()
            .map(|c| c.into_iter().map(|e| e as u32).collect())
            .collect();
        let mut by_edge = vec![Vec::new(); m];
        for (k, c) in copies.iter().enumerate() {
            for &e in c {
                by_edge[e as usize].push(k as u32);
            }
        }
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&e| (std::cmp::Reverse(by_edge[e].len()), e));
        let mut rank = vec![0; m];
        for (r, &e) in order.iter().enumerate() {
            rank[e] = r;
        }
        Problem { m, copies, by_edge, rank }
    }
}

enum Trail {
    Domain(u32, u8),
    Assign(u32),
}

enum Stop {
    Budget,
    Abort,
}

struct Shared<'a> {
    nodes: &'a AtomicU64,
    budget: Option<u64>,
    flush_every: u64,
    exhausted: &'a AtomicBool,
    /// Lowest branch index that has found a colouring.
    best: &'a AtomicUsize,
}

struct Solver<'a> {
    p: &'a Problem,
    color: Vec<u8>,
    dom: Vec<u8>,
    counts: Vec<[u8; 3]>,
    uncolored: Vec<u8>,
    trail: Vec<Trail>,
    queue: Vec<u32>,
    pending: u64,
    branch: usize,
    shared: &'a Shared<'a>,
}

impl<'a> Solver<'a> {
    fn new(p: &'a Problem, branch: usize, shared: &'a Shared<'a>) -> Solver<'a> {
        Solver {
            p,
            color: vec![NONE; p.m],
            dom: vec![ALL; p.m],
            counts: vec![[0; 3]; p.copies.len()],
            uncolored: p.copies.iter().map(|c| c.len() as u8).collect(),
            trail: Vec::new(),
            queue: Vec::new(),
            pending: 0,
            branch,
            shared,
        }
    }

    fn restrict(&mut self, e: usize, mask: u8) -> bool {
        let old = self.dom[e];
        let new = old & mask;
        if new == 0 {
            return false;
        }
        if new != old {
            self.trail.push(Trail::Domain(e as u32, old));
            self.dom[e] = new;
            if new.count_ones() == 1 {
                self.queue.push(e as u32);
            }
        }
        true
    }

    /// Colours `e` and updates every copy through it. A copy that can no
    /// longer collect three colours is a conflict; a copy with exactly as many
    /// open edges as missing colours restricts those edges to the missing ones.
    fn assign(&mut self, e: usize, c: u8) -> bool {
        self.trail.push(Trail::Assign(e as u32));
        self.color[e] = c;
        let p = self.p;
        for &k in &p.by_edge[e] {
            let k = k as usize;
            self.counts[k][c as usize] += 1;
            self.uncolored[k] -= 1;
        }
        for &k in &p.by_edge[e] {
            let k = k as usize;
            let seen = self.seen(k);
            let missing = 3 - seen.count_ones() as u8;
            let open = self.uncolored[k];
            if open < missing {
                return false;
            }
            if missing > 0 && open == missing {
                for &f in &p.copies[k] {
                    let f = f as usize;
                    if self.color[f] == NONE && !self.restrict(f, ALL & !seen) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn seen(&self, k: usize) -> u8 {
        let c = &self.counts[k];
        u8::from(c[0] > 0) | (u8::from(c[1] > 0) << 1) | (u8::from(c[2] > 0) << 2)
    }

    fn propagate(&mut self) -> bool {
        while let Some(e) = self.queue.pop() {
            let e = e as usize;
            if self.color[e] != NONE {
                continue;
            }
            let c = self.dom[e].trailing_zeros() as u8;
            if !self.assign(e, c) {
                self.queue.clear();
                return false;
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().expect("trail entry") {
                Trail::Domain(e, old) => self.dom[e as usize] = old,
                Trail::Assign(e) => {
                    let e = e as usize;
                    let c = self.color[e] as usize;
                    for &k in &self.p.by_edge[e] {
                        self.counts[k as usize][c] -= 1;
                        self.uncolored[k as usize] += 1;
                    }
                    self.color[e] = NONE;
                }
            }
        }
    }

    fn tick(&mut self) -> Result<(), Stop> {
        self.pending += 1;
        if self.pending >= self.shared.flush_every {
            self.flush()?;
        }
        Ok(())
    }

    fn flush(&mut self) -> Result<(), Stop> {
        let total = self.shared.nodes.fetch_add(self.pending, Ordering::Relaxed) + self.pending;
        self.pending = 0;
        if self.shared.best.load(Ordering::Relaxed) < self.branch {
            return Err(Stop::Abort);
        }
        if self.shared.budget.is_some_and(|b| total > b) {
            self.shared.exhausted.store(true, Ordering::Relaxed);
            return Err(Stop::Budget);
        }
        Ok(())
    }

    fn pick(&self) -> Option<usize> {
        (0..self.p.m)
            .filter(|&e| self.color[e] == NONE)
            .min_by_key(|&e| (self.dom[e].count_ones(), self.p.rank[e]))
    }

    fn dfs(&mut self) -> Result<bool, Stop> {
        self.tick()?;
        let Some(e) = self.pick() else {
            return Ok(true);
        };
        let dom = self.dom[e];
        for c in 0..3u8 {
            if dom & (1 << c) == 0 {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(e, c) && self.propagate() && self.dfs()? {
                return Ok(true);
            }
            self.queue.clear();
            self.undo(mark);
        }
        Ok(false)
    }
}

/// Colour-degree profiles `(a, b, c)` at vertex 0 with `a >= b >= c`.
fn root_profiles(d: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=a.min(d - a)).rev() {
            let c = d - a - b;
            if c <= b {
                out.push([a, b, c]);
            }
        }
    }
    out
}

enum BranchResult {
    Found(Vec<u8>),
    Refuted,
    Stopped,
}

/// Depth-first search for a polychromatic colouring of `K_n`.
///
/// Every copy of `H` tracks its colour counts and open edges; forced colours
/// are propagated before branching, and the next edge is the one with the
/// fewest remaining colours. At the root, the edges at vertex 0 are coloured
/// `R^a B^b G^c` with `a >= b >= c` (any colouring can be brought into this
/// form by permuting colours and then the other vertices), and these profiles
/// are searched in parallel. `Refuted` is only reported when every branch
/// finished; with a budget the search may instead end in `Timeout`.
pub fn backtracking_polychromatic(
    n: usize,
    h: &PatternGraph,
    budget: Option<u64>,
) -> Result<SearchOutcome, XiError> {
    if budget == Some(0) {
        return Err(XiError::ZeroBudget);
    }
    let start = Instant::now();
    let p = Problem::new(n, h);
    let profiles = if n >= 2 { root_profiles(n - 1) } else { vec![[0, 0, 0]] };
    let nodes = AtomicU64::new(0);
    let exhausted = AtomicBool::new(false);
    let best = AtomicUsize::new(usize::MAX);
    let shared = Shared {
        nodes: &nodes,
        budget,
        flush_every: budget.map_or(FLUSH, |b| b.min(FLUSH)),
        exhausted: &exhausted,
        best: &best,
    };

    let results: Vec<BranchResult> = profiles
        .par_iter()
        .enumerate()
        .map(|(i, prof)| {
            if best.load(Ordering::Relaxed) < i || exhausted.load(Ordering::Relaxed) {
                return BranchResult::Stopped;
            }
            let mut s = Solver::new(&p, i, &shared);
            let mut ok = true;
            let mut v = 1;
            for (c, &count) in prof.iter().enumerate() {
                for _ in 0..count {
                    let e = edge_index(n, 0, v);
                    v += 1;
                    if ok && s.color[e] == NONE {
                        ok = s.dom[e] & (1 << c) != 0 && s.assign(e, c as u8) && s.propagate();
                    } else if ok {
                        ok = s.color[e] == c as u8;
                    }
                }
            }
            let outcome = if ok { s.dfs() } else { Ok(false) };
            nodes.fetch_add(s.pending, Ordering::Relaxed);
            match outcome {
                Ok(true) => {
                    best.fetch_min(i, Ordering::Relaxed);
                    BranchResult::Found(s.color.clone())
                }
                Ok(false) => BranchResult::Refuted,
                Err(_) => BranchResult::Stopped,
            }
        })
        .collect();

    let found = results.iter().find_map(|r| match r {
        BranchResult::Found(c) => Some(c),
        _ => None,
    });
    let verdict = match found {
        Some(digits) => Verdict::Found { coloring: coloring_from_digits(n, digits) },
        None if results.iter().all(|r| matches!(r, BranchResult::Refuted)) => Verdict::Refuted,
        None => Verdict::Timeout,
    };
    Ok(SearchOutcome {
        n,
        method: Method::Backtracking,
        verdict,
        nodes: nodes.load(Ordering::Relaxed),
        copies: p.copies.len(),
        reductions: vec![
            format!(
                "vertex 0 coloured R^a B^b G^c with a >= b >= c ({} root profiles)",
                profiles.len()
            ),
            "forced colours propagated per copy".to_string(),
        ],
        elapsed: start.elapsed(),
    })
}
