//! Colouring interchange.
//!
//! CSV: a `# vertices: n` comment, then one `u,v,R|B|G` line per host edge.
//! Other `#` lines, blank lines and a literal `u,v,color` header are skipped.
//! Without the vertex comment, `n` is one more than the largest endpoint.
//!
//! DOT: an undirected graph with every vertex declared and `color=` on each
//! edge; [`parse_dot`] reads back exactly what [`to_dot`] writes.

use std::fmt::Write as _;

use super::{Color, ColoringError, EdgeColoring};

pub fn to_csv(c: &EdgeColoring) -> String {
    let mut out = format!("# vertices: {}\n", c.n());
    for (u, v, col) in c.triples() {
        let _ = writeln!(out, "{u},{v},{col}");
    }
    out
}

fn parse_vertex(tok: &str, lineno: usize) -> Result<usize, ColoringError> {
    tok.trim()
        .parse()
        .map_err(|_| ColoringError::Parse(format!("line {lineno}: bad vertex `{}`", tok.trim())))
}

fn build(n: Option<usize>, triples: Vec<(usize, usize, Color)>) -> Result<EdgeColoring, ColoringError> {
    let n = n.unwrap_or_else(|| triples.iter().map(|&(u, v, _)| u.max(v) + 1).max().unwrap_or(0));
    let mut seen = std::collections::HashSet::new();
    for &(u, v, _) in &triples {
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(ColoringError::Parse(format!("edge {u}-{v} listed twice")));
        }
    }
    EdgeColoring::from_triples(n, triples)
}

pub fn parse_csv(text: &str) -> Result<EdgeColoring, ColoringError> {
    let mut n = None;
    let mut triples = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        let lineno = i + 1;
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(v) = rest.trim().strip_prefix("vertices:") {
                n = Some(parse_vertex(v, lineno)?);
            }
            continue;
        }
        if line.is_empty() || line.eq_ignore_ascii_case("u,v,color") {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != 3 {
            return Err(ColoringError::Parse(format!("line {lineno}: expected `u,v,color`")));
        }
        let col = Color::from_code(parts[2])
            .ok_or_else(|| ColoringError::Parse(format!("line {lineno}: bad colour `{}`", parts[2].trim())))?;
        triples.push((parse_vertex(parts[0], lineno)?, parse_vertex(parts[1], lineno)?, col));
    }
    build(n, triples)
}

pub fn to_dot(c: &EdgeColoring) -> String {
    let mut out = String::from("graph coloring {\n");
    for v in 0..c.n() {
        let _ = writeln!(out, "  {v};");
    }
    for (u, v, col) in c.triples() {
        let _ = writeln!(out, "  {u} -- {v} [color={}];", col.name());
    }
    out.push_str("}\n");
    out
}

pub fn parse_dot(text: &str) -> Result<EdgeColoring, ColoringError> {
    let mut n = 0usize;
    let mut triples = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = line.trim().trim_end_matches(';').trim();
        if line.is_empty() || line.starts_with("graph") || line == "}" || line.starts_with("//") {
            continue;
        }
        if let Some((lhs, rest)) = line.split_once("--") {
            let (rhs, attrs) = rest.split_once('[').ok_or_else(|| {
                ColoringError::Parse(format!("line {lineno}: edge without colour attribute"))
            })?;
            let (u, v) = (parse_vertex(lhs, lineno)?, parse_vertex(rhs, lineno)?);
            let col = attrs
                .trim_end_matches(']')
                .split(',')
                .filter_map(|kv| kv.split_once('='))
                .find(|(k, _)| k.trim() == "color")
                .and_then(|(_, val)| Color::from_code(val.trim().trim_matches('"')))
                .ok_or_else(|| ColoringError::Parse(format!("line {lineno}: missing or bad colour")))?;
            n = n.max(u + 1).max(v + 1);
            triples.push((u, v, col));
        } else {
            n = n.max(parse_vertex(line, lineno)? + 1);
        }
    }
    build(Some(n), triples)
}
