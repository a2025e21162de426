use std::fs;
use std::path::Path;

use turnaround::coloring::io::{parse_csv, parse_dot, to_csv, to_dot};
use turnaround::coloring::{Color, EdgeColoring};
use turnaround::game::{
    offline_polychromatic_builder, solver_builder, star_builder, tau3_tree_builder, triangle_builder_n5,
    BuilderStrategy, SequentialBuilder, SolveOptions,
};
use turnaround::graph::{Family, PatternGraph};

pub const BUILDER_NAMES: &str = "triangle5, star, tau3, sequential[:R|B|G], offline:<coloring file>, solver";

/// Reads a colouring as CSV, DOT or JSON, chosen by extension (CSV otherwise).
pub fn read_coloring(path: &Path) -> Result<EdgeColoring, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let parsed = match path.extension().and_then(|e| e.to_str()) {
        Some("dot" | "gv") => parse_dot(&text).map_err(|e| e.to_string()),
        Some("json") => serde_json::from_str(&text).map_err(|e| e.to_string()),
        _ => parse_csv(&text).map_err(|e| e.to_string()),
    };
    parsed.map_err(|e| format!("{}: {e}", path.display()))
}

pub fn coloring_text(c: &EdgeColoring, path: &Path) -> String {
    match path.extension().and_then(|e| e.to_str()) {
        Some("dot" | "gv") => to_dot(c),
        Some("json") => serde_json::to_string_pretty(c).expect("colouring serializes") + "\n",
        _ => to_csv(c),
    }
}

/// Turns a builder name from the command line into a strategy for `n` and `h`.
pub fn resolve_builder(name: &str, n: usize, h: &PatternGraph) -> Result<Box<dyn BuilderStrategy>, String> {
    let (head, arg) = match name.split_once(':') {
        Some((a, b)) => (a, Some(b)),
        None => (name, None),
    };
    let b: Box<dyn BuilderStrategy> = match (head, arg) {
        ("triangle5", None) => {
            if h.family() != Family::Clique(3) || n != 5 {
                return Err("triangle5 plays K3 on 5 vertices".into());
            }
            Box::new(triangle_builder_n5())
        }
        ("star", None) => {
            let Family::Star(t) = h.family() else {
                return Err("the star builder needs a star target".into());
            };
            let s = star_builder(t).map_err(|e| e.to_string())?;
            if s.board_size() != n {
                return Err(format!("the star builder for star:{t} plays on n = {}", s.board_size()));
            }
            Box::new(s)
        }
        ("tau3", None) => Box::new(tau3_tree_builder()),
        ("sequential", None) => Box::new(SequentialBuilder::default()),
        ("sequential", Some(code)) => {
            let forbidden = Color::from_code(code).ok_or_else(|| format!("unknown colour {code:?}"))?;
            Box::new(SequentialBuilder { forbidden })
        }
        ("offline", Some(path)) => Box::new(offline_polychromatic_builder(read_coloring(Path::new(path))?)),
        ("solver", None) => Box::new(solver_builder(n, h, SolveOptions::default()).map_err(|e| e.to_string())?),
        _ => return Err(format!("unknown builder {name:?}; expected one of {BUILDER_NAMES}")),
    };
    Ok(b)
}
