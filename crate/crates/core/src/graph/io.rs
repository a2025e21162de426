//! Text interchange formats for graphs.
//!
//! * adjacency list: `n` on the first line, then one `u v` pair per line
//!   (0-indexed). Blank lines and lines starting with `#` are ignored.
//! * graph6, as produced by nauty's `geng`/`showg` for graphs with fewer
//!   than 258048 vertices.

use std::fmt::Write as _;

use super::{Graph, GraphError};

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, first) = lines.next().ok_or_else(|| GraphError::Parse("empty input".into()))?;
    let n: usize = first
        .parse()
        .map_err(|_| GraphError::Parse(format!("bad vertex count `{first}`")))?;
    let mut g = Graph::empty(n);
    for (lineno, line) in lines {
        let mut parts = line.split_whitespace();
        let mut next = || -> Result<usize, GraphError> {
            parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| GraphError::Parse(format!("line {}: expected `u v`", lineno + 1)))
        };
        let (u, v) = (next()?, next()?);
        g.try_add_edge(u, v)?;
    }
    Ok(g)
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut bytes = Vec::new();
    if n < 63 {
        bytes.push(n as u8 + 63);
    } else {
        assert!(n < 258_048, "graph6 short form supports n < 258048");
        bytes.push(126);
        for shift in [12, 6, 0] {
            bytes.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | u8::from(g.has_edge(u, v));
            filled += 1;
            if filled == 6 {
                bytes.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(bytes).expect("graph6 is ASCII")
}

pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let text = text.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let data: Vec<u8> = text.bytes().collect();
    if data.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(GraphError::Parse("graph6 byte out of range".into()));
    }
    let (n, body) = match data.first() {
        None => return Err(GraphError::Parse("empty graph6 string".into())),
        Some(126) => {
            if data.len() < 4 || data[1] == 126 {
                return Err(GraphError::Parse("unsupported graph6 size header".into()));
            }
            let n = data[1..4].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &data[4..])
        }
        Some(&b) => ((b - 63) as usize, &data[1..]),
    };
    let needed = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if body.len() != needed {
        return Err(GraphError::Parse(format!("expected {needed} data bytes, found {}", body.len())));
    }
    let mut g = Graph::empty(n);
    let mut bit = 0usize;
    for v in 1..n {
        for u in 0..v {
            let byte = body[bit / 6] - 63;
            if (byte >> (5 - bit % 6)) & 1 == 1 {
                g.add_edge(u, v);
            }
            bit += 1;
        }
    }
    Ok(g)
}
