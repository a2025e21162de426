//! Counterexample files written on exit 1 and read back by `verify --counterexample`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use turnaround::coloring::{find_bicolored_copy, is_polychromatic, max_bicolored_matching, Color, EdgeColoring};
use turnaround::game::{confirm_counterexample, Board, Round};
use turnaround::graph::{contains_copy, Graph, PatternGraph};

use crate::builders::resolve_builder;

/// A pattern graph spelled out, so the artifact does not depend on the graph-spec parser
/// or file it came from.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PatternDoc {
    pub label: String,
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl PatternDoc {
    pub fn of(h: &PatternGraph) -> PatternDoc {
        PatternDoc { label: h.label(), vertices: h.vertex_count(), edges: h.graph().edges().collect() }
    }

    pub fn pattern(&self) -> Result<PatternGraph, String> {
        Graph::from_edges(self.vertices, self.edges.iter().copied())
            .map(PatternGraph::new)
            .map_err(|e| e.to_string())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Artifact {
    /// A Painter line that beats the named Builder strategy.
    BuilderFailure { builder: String, n: usize, target: PatternDoc, transcript: Vec<Round>, reason: String },
    /// A copy of the target using at most two colours; `map[v]` is the host vertex of `v`.
    BicoloredCopy { target: PatternDoc, coloring: EdgeColoring, map: Vec<usize> },
    UnbalancedVertex { coloring: EdgeColoring, vertex: usize },
    /// Two colour classes whose union holds a matching of `size >= limit`.
    BicoloredMatching { coloring: EdgeColoring, size: usize, limit: usize },
    /// A red/blue colouring with no monochromatic copy of the target.
    RamseyColoring { target: PatternDoc, coloring: EdgeColoring },
    /// A polychromatic colouring of `K_{|V(H)|}`, refuting primitivity.
    PolychromaticWitness { target: PatternDoc, coloring: EdgeColoring },
}

impl Artifact {
    pub fn kind(&self) -> &'static str {
        match self {
            Artifact::BuilderFailure { .. } => "builder_failure",
            Artifact::BicoloredCopy { .. } => "bicolored_copy",
            Artifact::UnbalancedVertex { .. } => "unbalanced_vertex",
            Artifact::BicoloredMatching { .. } => "bicolored_matching",
            Artifact::RamseyColoring { .. } => "ramsey_coloring",
            Artifact::PolychromaticWitness { .. } => "polychromatic_witness",
        }
    }

    pub fn bicolored_copy(h: &PatternGraph, c: &EdgeColoring) -> Option<Artifact> {
        find_bicolored_copy(c, h).map(|e| Artifact::BicoloredCopy {
            target: PatternDoc::of(h),
            coloring: c.clone(),
            map: e.map,
        })
    }

    /// Checks the artifact from scratch. `Ok(true)` means it is a genuine
    /// counterexample; `Ok(false)` means it does not hold up.
    pub fn confirm(&self) -> Result<(bool, String), String> {
        match self {
            Artifact::BuilderFailure { builder, n, target, transcript, .. } => {
                let h = target.pattern()?;
                let strategy = resolve_builder(builder, *n, &h)?;
                let board = Board::new(*n, h).map_err(|e| e.to_string())?;
                let ok = confirm_counterexample(strategy.as_ref(), &board, transcript).map_err(|e| e.to_string())?;
                Ok((ok, format!("{} rounds replayed against {builder}", transcript.len())))
            }
            Artifact::BicoloredCopy { target, coloring, map } => {
                let h = target.pattern()?;
                let distinct: BTreeSet<usize> = map.iter().copied().collect();
                if map.len() != h.vertex_count() || distinct.len() != map.len() || map.iter().any(|&v| v >= coloring.n()) {
                    return Ok((false, "vertex map is not an injection into the host".into()));
                }
                let mut used = BTreeSet::new();
                for (u, v) in h.graph().edges() {
                    match coloring.color(map[u], map[v]) {
                        Some(c) => {
                            used.insert(c);
                        }
                        None => return Ok((false, format!("edge {}-{} is not coloured", map[u], map[v]))),
                    }
                }
                Ok((used.len() <= 2, format!("copy uses {} colours", used.len())))
            }
            Artifact::UnbalancedVertex { coloring, vertex } => {
                if *vertex >= coloring.n() {
                    return Ok((false, "vertex out of range".into()));
                }
                let mut d = [0usize; 3];
                for w in coloring.host().neighbors(*vertex) {
                    if let Some(c) = coloring.color(*vertex, w) {
                        d[c.index()] += 1;
                    }
                }
                let spread = d.iter().max().unwrap() - d.iter().min().unwrap();
                Ok((spread > 1, format!("colour degrees {d:?}")))
            }
            Artifact::BicoloredMatching { coloring, limit, .. } => {
                let size = max_bicolored_matching(coloring);
                Ok((size >= *limit, format!("largest bi-coloured matching has {size} edges")))
            }
            Artifact::RamseyColoring { target, coloring } => {
                let h = target.pattern()?;
                if !coloring.host().is_complete() || coloring.color_counts()[Color::Green.index()] > 0 {
                    return Ok((false, "not a red/blue colouring of a complete graph".into()));
                }
                let mono = [Color::Red, Color::Blue].iter().any(|&c| contains_copy(&h, &coloring.class(c)));
                Ok((!mono, format!("K_{} with no monochromatic {}", coloring.n(), h.label())))
            }
            Artifact::PolychromaticWitness { target, coloring } => {
                let h = target.pattern()?;
                let ok = coloring.host().is_complete() && coloring.n() >= h.vertex_count() && is_polychromatic(coloring, &h);
                Ok((ok, format!("polychromatic colouring of K_{} for {}", coloring.n(), h.label())))
            }
        }
    }
}
