//! Graph spec mini-language: `K<t>`, `P<t>`, `M<t>`, `star:<t>`,
//! `broom:<s>,<t>`, `dstar:<k>,<l>`, `turan:<n>,<k>`, `file:<path>`.

use std::fs;

use turnaround::graph::io::{parse_edge_list, parse_graph6};
use turnaround::graph::{
    make_broom, make_clique, make_double_star, make_matching, make_path, make_star, make_turan, PatternGraph,
};

fn one(s: &str, spec: &str) -> Result<usize, String> {
    s.trim().parse().map_err(|_| format!("bad number {s:?} in graph spec {spec:?}"))
}

fn two(s: &str, spec: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("graph spec {spec:?} needs two numbers"))?;
    Ok((one(a, spec)?, one(b, spec)?))
}

pub fn parse_graph_spec(spec: &str) -> Result<PatternGraph, String> {
    let spec = spec.trim();
    let g = if let Some(path) = spec.strip_prefix("file:") {
        let text = fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
        let graph = if path.ends_with(".g6") {
            parse_graph6(text.trim())
        } else {
            parse_edge_list(&text)
        }
        .map_err(|e| format!("{path}: {e}"))?;
        return Ok(PatternGraph::new(graph));
    } else if let Some(rest) = spec.strip_prefix("star:") {
        make_star(one(rest, spec)?)
    } else if let Some(rest) = spec.strip_prefix("broom:") {
        let (s, t) = two(rest, spec)?;
        make_broom(s, t)
    } else if let Some(rest) = spec.strip_prefix("dstar:") {
        let (k, l) = two(rest, spec)?;
        make_double_star(k, l)
    } else if let Some(rest) = spec.strip_prefix("turan:") {
        let (n, k) = two(rest, spec)?;
        return make_turan(n, k).map(PatternGraph::new).map_err(|e| e.to_string());
    } else if let Some(rest) = spec.strip_prefix('K') {
        make_clique(one(rest, spec)?)
    } else if let Some(rest) = spec.strip_prefix('P') {
        make_path(one(rest, spec)?)
    } else if let Some(rest) = spec.strip_prefix('M') {
        make_matching(one(rest, spec)?)
    } else {
        return Err(format!("unknown graph spec {spec:?}"));
    };
    g.map_err(|e| format!("{spec}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families() {
        assert_eq!(parse_graph_spec("K4").unwrap().edge_count(), 6);
        assert_eq!(parse_graph_spec("P5").unwrap().edge_count(), 4);
        assert_eq!(parse_graph_spec("M3").unwrap().vertex_count(), 6);
        assert_eq!(parse_graph_spec("star:3").unwrap().edge_count(), 3);
        assert_eq!(parse_graph_spec("broom:3,4").unwrap().vertex_count(), 7);
        assert_eq!(parse_graph_spec("dstar:2,2").unwrap().vertex_count(), 6);
        assert_eq!(parse_graph_spec("turan:12,4").unwrap().edge_count(), 54);
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "Q3", "K", "Kx", "star:", "broom:3", "file:/nonexistent/x"] {
            assert!(parse_graph_spec(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn reads_files() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c4.txt");
        fs::write(&p, "4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
        let g = parse_graph_spec(&format!("file:{}", p.display())).unwrap();
        assert_eq!(g.edge_count(), 4);
    }
}
