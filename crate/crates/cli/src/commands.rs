use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use turnaround::coloring::{
    balanced_coloring, find_unbalanced_vertex, is_polychromatic, k3_matching_coloring, k4_grid_coloring,
    matching_polychromatic, max_bicolored_matching, split_coloring, turan_inherited_coloring,
};
use turnaround::game::{
    f_bracket, play as play_game, ramsey_2color_check, replay, solve_exact, verify_builder_strategy, Board,
    BuilderStrategy, FOptions, GameError, GreedyPainter, PainterStrategy, RandomPainter, Round, ScriptedPainter,
    SequentialBuilder, SolveOptions, TwoColorPainter, VerifyOptions,
};
use turnaround::graph::{make_clique, PatternGraph};
use turnaround::prob::{
    appendix_chain, appendix_chain_unchecked, appendix_threshold, clique_union_bound, copy_union_bound,
    double_star_threshold, double_star_value, exact_non_polychromatic_probability, monte_carlo_polychromatic,
    shared_leaf_threshold, shared_leaf_value, tree_union_bound, ProbError,
};
use turnaround::xi::{compute_xi, is_xi_primitive, polychromatic_search, Method, Primitivity, SearchMode, Verdict, XiOptions, XiValue};

use crate::artifact::{Artifact, PatternDoc};
use crate::builders::{coloring_text, read_coloring, resolve_builder};
use crate::interactive::{render_board, replay_state, HumanBuilder, HumanPainter};
use crate::output::{write_file, CliError, Outcome, EXIT_FALSE, EXIT_OK, EXIT_UNKNOWN};
use crate::spec::parse_graph_spec;
use crate::{BoundsArgs, ConstructArgs, EstimateArgs, Mode, PlayArgs, PrimitiveArgs, Side, SolveArgs, VerifyArgs, XiArgs};

fn graph(spec: &str) -> Result<PatternGraph, CliError> {
    parse_graph_spec(spec).map_err(CliError::usage)
}

fn need<'a, T>(v: &'a Option<T>, flag: &str) -> Result<&'a T, CliError> {
    v.as_ref().ok_or_else(|| CliError::usage(format!("{flag} is required here")))
}

fn search_mode(m: Mode) -> SearchMode {
    match m {
        Mode::Auto => SearchMode::Auto,
        Mode::Exhaustive => SearchMode::Exhaustive,
        Mode::Backtracking => SearchMode::Backtracking,
    }
}

fn game_err(e: GameError) -> CliError {
    match e {
        GameError::InvalidBoard(_) | GameError::Input(_) => CliError::usage(e.to_string()),
        _ => CliError { code: EXIT_UNKNOWN, message: e.to_string() },
    }
}

fn prob_err(e: ProbError) -> CliError {
    CliError::usage(e.to_string())
}

fn write_artifact(path: &Path, a: &Artifact) -> Result<(), CliError> {
    write_file(path, &(serde_json::to_string_pretty(a).expect("artifact serializes") + "\n"))
}

/// File-name friendly version of a pattern label.
fn slug(label: &str) -> String {
    label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect::<String>()
        .trim_matches('_')
        .to_string()
}

/// Saved alongside `xi`: a search that found nothing, with enough detail to rerun it.
#[derive(Debug, Serialize, Deserialize)]
pub struct Refutation {
    pub target: PatternDoc,
    pub n: usize,
    pub method: Method,
    pub budget: Option<u64>,
    pub nodes: u64,
    pub copies: usize,
    pub reductions: Vec<String>,
}

pub fn xi(a: &XiArgs, report: Option<&Path>) -> Result<Outcome, CliError> {
    let h = graph(&a.graph)?;
    let opts = XiOptions { mode: search_mode(a.mode), budget: a.budget, all_n: a.all_n };
    let r = compute_xi(&h, a.cap, opts).map_err(|e| CliError::usage(e.to_string()))?;

    let dir = match (&a.certs, report) {
        (Some(d), _) => d.clone(),
        (None, Some(p)) => p.parent().map(Path::to_path_buf).unwrap_or_default(),
        (None, None) => PathBuf::new(),
    };
    let name = slug(&h.label());
    let mut certificates = Vec::new();
    if let Some(w) = &r.witness {
        let path = dir.join(format!("xi_{name}_witness_n{}.csv", w.n()));
        write_file(&path, &coloring_text(w, &path))?;
        certificates.push(json!({ "kind": "witness", "n": w.n(), "path": path }));
    }
    if let Some(s) = r.searches.iter().find(|s| s.verdict.is_refuted()) {
        let cert = Refutation {
            target: PatternDoc::of(&h),
            n: s.n,
            method: s.method,
            budget: a.budget,
            nodes: s.nodes,
            copies: s.copies,
            reductions: s.reductions.clone(),
        };
        let path = dir.join(format!("xi_{name}_refutation_n{}.json", s.n));
        write_file(&path, &(serde_json::to_string_pretty(&cert).expect("serializes") + "\n"))?;
        certificates.push(json!({ "kind": "refutation", "n": s.n, "path": path }));
    }

    let code = match r.xi {
        XiValue::Exact { .. } => EXIT_OK,
        XiValue::Bracket { .. } => EXIT_UNKNOWN,
    };
    let value = match r.xi {
        XiValue::Exact { value } => format!("xi({}) = {value}", r.pattern),
        XiValue::Bracket { lower, upper: Some(u) } => format!("{lower} <= xi({}) <= {u}", r.pattern),
        XiValue::Bracket { lower, upper: None } => format!("xi({}) >= {lower}", r.pattern),
    };
    let mut summary = vec![value];
    summary.extend(r.searches.iter().map(|s| format!("n = {}: {} after {} nodes", s.n, s.verdict.label(), s.nodes)));
    summary.extend(certificates.iter().map(|c| format!("{} certificate: {}", c["kind"].as_str().unwrap(), c["path"].as_str().unwrap_or("?"))));
    Ok(Outcome::new(code, &json!({ "report": r, "certificates": certificates }), summary))
}

pub fn primitive(a: &PrimitiveArgs) -> Result<Outcome, CliError> {
    let h = graph(&a.graph)?;
    let (p, search) = is_xi_primitive(&h, search_mode(a.mode), a.budget).map_err(|e| CliError::usage(e.to_string()))?;
    let mut counterexample = None;
    let code = match &p {
        Primitivity::Primitive => EXIT_OK,
        Primitivity::NotPrimitive { witness } => {
            let art = Artifact::PolychromaticWitness { target: PatternDoc::of(&h), coloring: witness.clone() };
            write_artifact(&a.out, &art)?;
            counterexample = Some(&a.out);
            EXIT_FALSE
        }
        Primitivity::Unknown => EXIT_UNKNOWN,
    };
    let summary = vec![
        format!("{} primitive: {}", h.label(), p.as_bool().map_or("unknown".to_string(), |b| b.to_string())),
        format!("searched K_{} with {} nodes", search.n, search.nodes),
    ];
    Ok(Outcome::new(
        code,
        &json!({ "target": h.label(), "primitive": p.as_bool(), "answer": p, "search": search, "counterexample": counterexample }),
        summary,
    ))
}

pub fn construct(a: &ConstructArgs) -> Result<Outcome, CliError> {
    let k3 = make_clique(3).expect("K3");
    let (name, c, checks) = if let Some(n) = a.balanced {
        let c = balanced_coloring(n)?;
        let ok = find_unbalanced_vertex(&c).is_none();
        ("balanced", c, json!({ "balanced": ok }))
    } else if let Some(n) = a.matching {
        let c = matching_polychromatic(n)?;
        let limit = 3 * n / 7 + 1;
        let size = max_bicolored_matching(&c);
        ("matching", c, json!({ "max_bicolored_matching": size, "limit": limit, "holds": size < limit }))
    } else if a.k3_matching {
        let c = k3_matching_coloring();
        let ok = is_polychromatic(&c, &k3);
        ("k3_matching", c, json!({ "polychromatic_for": "K3", "holds": ok }))
    } else if a.k4_grid {
        let c = k4_grid_coloring();
        let ok = is_polychromatic(&c, &make_clique(4).expect("K4"));
        ("k4_grid", c, json!({ "polychromatic_for": "K4", "holds": ok }))
    } else if let Some(v) = &a.split {
        let c = split_coloring(v[0], v[1])?;
        ("split", c, json!({}))
    } else {
        let n = a.turan.expect("clap enforces one construction");
        let c = turan_inherited_coloring(n, &k3_matching_coloring())?;
        let ok = is_polychromatic(&c, &k3);
        ("turan", c, json!({ "triangles_rainbow": ok }))
    };
    let holds = checks.as_object().is_none_or(|m| m.values().all(|v| v.as_bool() != Some(false)));
    if let Some(path) = &a.out {
        write_file(path, &coloring_text(&c, path))?;
    }
    let counts = c.color_counts();
    let summary = vec![
        format!("{name} colouring on {} vertices, {} edges", c.n(), c.host().edge_count()),
        format!("red {} blue {} green {}", counts[0], counts[1], counts[2]),
        format!("checks: {checks}"),
    ];
    let result = json!({
        "construction": name,
        "n": c.n(),
        "edges": c.host().edge_count(),
        "color_counts": counts,
        "checks": checks,
        "out": a.out,
        "coloring": if a.out.is_none() { serde_json::to_value(&c).expect("serializes") } else { Value::Null },
    });
    Ok(Outcome::new(if holds { EXIT_OK } else { EXIT_FALSE }, &result, summary))
}

fn found(a: &VerifyArgs, art: Artifact) -> Result<Value, CliError> {
    write_artifact(&a.out, &art)?;
    Ok(json!({ "kind": art.kind(), "path": a.out }))
}

pub fn verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    let (check, holds, detail, cx): (&str, Option<bool>, Value, Option<Value>) = if let Some(path) = &a.balanced {
        let c = read_coloring(path)?;
        match find_unbalanced_vertex(&c) {
            None => ("balanced", Some(true), json!({ "n": c.n() }), None),
            Some(v) => {
                let cx = found(a, Artifact::UnbalancedVertex { coloring: c.clone(), vertex: v })?;
                ("balanced", Some(false), json!({ "n": c.n(), "vertex": v }), Some(cx))
            }
        }
    } else if let Some(path) = &a.polychromatic {
        let h = graph(need(&a.graph, "--graph")?)?;
        let c = read_coloring(path)?;
        match Artifact::bicolored_copy(&h, &c) {
            None => ("polychromatic", Some(true), json!({ "n": c.n(), "target": h.label() }), None),
            Some(art) => {
                let cx = found(a, art)?;
                ("polychromatic", Some(false), json!({ "n": c.n(), "target": h.label() }), Some(cx))
            }
        }
    } else if let Some(name) = &a.builder {
        let h = graph(need(&a.graph, "--graph")?)?;
        let n = *need(&a.n, "--n")?;
        let b: Box<dyn BuilderStrategy> = resolve_builder(name, n, &h).map_err(CliError::usage)?;
        let board = Board::new(n, h.clone()).map_err(game_err)?;
        let opts = VerifyOptions { budget: a.budget, ..VerifyOptions::default() };
        match verify_builder_strategy(b.as_ref(), &board, opts) {
            Ok(r) => {
                let cx = match &r.counterexample {
                    Some(c) => Some(found(
                        a,
                        Artifact::BuilderFailure {
                            builder: name.clone(),
                            n,
                            target: PatternDoc::of(&h),
                            transcript: c.transcript.clone(),
                            reason: c.reason.clone(),
                        },
                    )?),
                    None => None,
                };
                ("builder", Some(r.holds), serde_json::to_value(&r).expect("serializes"), cx)
            }
            Err(GameError::Budget(b)) => ("builder", None, json!({ "budget_exhausted": b }), None),
            Err(e) => return Err(game_err(e)),
        }
    } else if a.ramsey {
        let h = graph(need(&a.graph, "--graph")?)?;
        let n = *need(&a.n, "--n")?;
        let r = ramsey_2color_check(n, &h).map_err(game_err)?;
        let cx = match &r.counterexample {
            Some(c) => Some(found(a, Artifact::RamseyColoring { target: PatternDoc::of(&h), coloring: c.clone() })?),
            None => None,
        };
        ("ramsey", Some(r.holds), serde_json::to_value(&r).expect("serializes"), cx)
    } else if let Some(n) = a.matching {
        let c = matching_polychromatic(n)?;
        let limit = 3 * n / 7 + 1;
        let size = max_bicolored_matching(&c);
        let detail = json!({ "n": n, "limit": limit, "max_bicolored_matching": size });
        if size < limit {
            ("matching", Some(true), detail, None)
        } else {
            let cx = found(a, Artifact::BicoloredMatching { coloring: c, size, limit })?;
            ("matching", Some(false), detail, Some(cx))
        }
    } else if let Some(path) = &a.counterexample {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let art: Artifact = serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
        let (confirmed, why) = art.confirm().map_err(CliError::usage)?;
        // A confirmed counterexample means the claim it refutes is false.
        let detail = json!({ "kind": art.kind(), "confirmed": confirmed, "detail": why });
        ("counterexample", Some(!confirmed), detail, None)
    } else {
        let path = a.refutation.as_ref().expect("clap enforces one check");
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let cert: Refutation = serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
        let h = cert.target.pattern().map_err(CliError::usage)?;
        let mode = match cert.method {
            Method::Exhaustive => SearchMode::Exhaustive,
            Method::Backtracking => SearchMode::Backtracking,
        };
        let out = polychromatic_search(cert.n, &h, mode, a.budget.or(cert.budget)).map_err(|e| CliError::usage(e.to_string()))?;
        let detail = json!({ "n": cert.n, "target": h.label(), "verdict": out.verdict.label(), "nodes": out.nodes });
        match out.verdict {
            Verdict::Refuted => ("refutation", Some(true), detail, None),
            Verdict::Found { coloring } => {
                let cx = found(a, Artifact::PolychromaticWitness { target: cert.target, coloring })?;
                ("refutation", Some(false), detail, Some(cx))
            }
            Verdict::Timeout => ("refutation", None, detail, None),
        }
    };
    let code = match holds {
        Some(true) => EXIT_OK,
        Some(false) => EXIT_FALSE,
        None => EXIT_UNKNOWN,
    };
    let mut summary = vec![format!("{check}: {}", holds.map_or("indeterminate".to_string(), |b| b.to_string()))];
    if check == "counterexample" {
        let verdict = if detail["confirmed"] == true { "confirmed" } else { "rejected" };
        summary.push(format!("{} {verdict}: {}", detail["kind"].as_str().unwrap_or("?"), detail["detail"].as_str().unwrap_or("")));
    }
    if let Some(c) = &cx {
        summary.push(format!("counterexample ({}) written to {}", c["kind"].as_str().unwrap(), c["path"].as_str().unwrap_or("?")));
    }
    Ok(Outcome::new(code, &json!({ "check": check, "holds": holds, "detail": detail, "counterexample": cx }), summary))
}

fn resolve_painter(spec: &str, seed: Option<u64>) -> Result<Box<dyn PainterStrategy>, CliError> {
    let p: Box<dyn PainterStrategy> = match spec {
        "two-color" => Box::new(TwoColorPainter),
        "greedy" => Box::new(GreedyPainter),
        "random" => Box::new(RandomPainter::new(*need(&seed, "--seed (random painter)")?)),
        _ => match spec.strip_prefix("scripted:") {
            Some(bits) if bits.chars().all(|c| c == '0' || c == '1') => {
                Box::new(ScriptedPainter::new(bits.chars().map(|c| c == '1').collect()))
            }
            _ => return Err(CliError::usage(format!("unknown painter {spec:?}"))),
        },
    };
    Ok(p)
}

pub fn play(a: &PlayArgs) -> Result<Outcome, CliError> {
    if let Some(path) = &a.replay {
        let h = graph(need(&a.graph, "--graph")?)?;
        let board = Board::new(*need(&a.n, "--n")?, h).map_err(game_err)?;
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let transcript: Vec<Round> =
            serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
        let out = replay(&board, &transcript).map_err(|e| CliError { code: EXIT_FALSE, message: e.to_string() })?;
        let summary = vec![format!("replayed {} rounds; winner {}", out.rounds, out.winner)];
        return Ok(Outcome::new(EXIT_OK, &out, summary));
    }
    let h = graph(need(&a.graph, "--graph")?)?;
    let n = *need(&a.n, "--n")?;
    let board = Board::new(n, h.clone()).map_err(game_err)?;
    let stdin = || Box::new(std::io::BufReader::new(std::io::stdin()));
    let stderr = || Box::new(std::io::stderr());
    let builder: Box<dyn BuilderStrategy> = match a.interactive {
        Some(Side::Builder) => Box::new(HumanBuilder::new(stdin(), stderr())),
        _ if a.builder == "sequential" => Box::new(SequentialBuilder::default()),
        _ => resolve_builder(&a.builder, n, &h).map_err(CliError::usage)?,
    };
    let mut painter: Box<dyn PainterStrategy> = match a.interactive {
        Some(Side::Painter) => Box::new(HumanPainter::new(stdin(), stderr())),
        _ => resolve_painter(&a.painter, a.seed)?,
    };
    let out = play_game(&board, builder.as_ref(), painter.as_mut()).map_err(game_err)?;
    if a.interactive.is_some() {
        let end = replay_state(&board, &out.transcript).map_err(game_err)?;
        eprintln!("{}", render_board(&end));
        eprintln!("{} wins after {} rounds", out.winner, out.rounds);
    }
    if let Some(path) = &a.transcript {
        write_file(path, &(serde_json::to_string_pretty(&out.transcript).expect("serializes") + "\n"))?;
    }
    let summary = vec![format!("{} vs {}: {} wins after {} rounds", out.builder, out.painter, out.winner, out.rounds)];
    Ok(Outcome::new(EXIT_OK, &out, summary))
}

pub fn solve(a: &SolveArgs) -> Result<Outcome, CliError> {
    let h = graph(&a.graph)?;
    if a.f {
        let mut opts = FOptions { n_max: a.n_max, ..FOptions::default() };
        if a.budget.is_some() {
            opts.budget = a.budget;
        }
        let r = f_bracket(&h, opts).map_err(game_err)?;
        let line = match r.exact() {
            Some(f) => format!("f({}) = {f}", r.target),
            None => format!("{} <= f({}) <= {}", r.lower, r.target, r.upper.map_or("?".into(), |u| u.to_string())),
        };
        let code = if r.exact().is_some() { EXIT_OK } else { EXIT_UNKNOWN };
        return Ok(Outcome::new(code, &r, vec![line]));
    }
    let n = *need(&a.n, "--n")?;
    let opts = SolveOptions { budget: a.budget, vertex_symmetry: !a.no_vertex_symmetry };
    match solve_exact(n, &h, opts) {
        Ok(v) => {
            let line = match v.rounds {
                Some(r) => format!("{} wins on K_{n} within {r} rounds ({} positions)", v.winner, v.positions),
                None => format!("{} wins on K_{n} ({} positions)", v.winner, v.positions),
            };
            Ok(Outcome::new(EXIT_OK, &v, vec![line]))
        }
        Err(GameError::Budget(b)) => Ok(Outcome::new(
            EXIT_UNKNOWN,
            &json!({ "n": n, "target": h.label(), "budget_exhausted": b }),
            vec![format!("budget of {b} positions exhausted")],
        )),
        Err(e) => Err(game_err(e)),
    }
}

pub fn bounds(a: &BoundsArgs) -> Result<Outcome, CliError> {
    let threshold = |name: &str, value: Option<u64>| {
        let line = value.map_or(format!("{name}: none found"), |v| format!("{name} = {v}"));
        let code = if value.is_some() { EXIT_OK } else { EXIT_UNKNOWN };
        Outcome::new(code, &json!({ "bound": name, "threshold": value }), vec![line])
    };
    if a.double_star_threshold {
        return Ok(threshold("double_star_threshold", Some(double_star_threshold())));
    }
    if a.shared_leaf_threshold {
        return Ok(threshold("shared_leaf_threshold", Some(shared_leaf_threshold())));
    }
    if let Some(v) = &a.appendix_threshold {
        return Ok(threshold("appendix_threshold", appendix_threshold(v[0], v[1])));
    }
    let (name, report) = if let Some(t) = a.clique {
        ("clique", clique_union_bound(t).map_err(prob_err)?)
    } else if let Some(v) = &a.tree {
        ("tree", tree_union_bound(v[0], v[1], v[2]).map_err(prob_err)?)
    } else if let Some(v) = &a.appendix {
        if a.unchecked {
            ("appendix", appendix_chain_unchecked(v[0], v[1], v[2]).map_err(prob_err)?)
        } else {
            match appendix_chain(v[0], v[1], v[2]) {
                Ok(r) => ("appendix", r),
                Err(ProbError::Regime(why)) => {
                    let r = appendix_chain_unchecked(v[0], v[1], v[2]).map_err(prob_err)?;
                    return Ok(Outcome::new(
                        EXIT_UNKNOWN,
                        &json!({ "bound": "appendix", "regime": why, "report": r }),
                        vec![format!("outside the regime: {why}")],
                    ));
                }
                Err(e) => return Err(prob_err(e)),
            }
        }
    } else if let Some(n) = a.double_star {
        ("double_star", double_star_value(n).map_err(prob_err)?)
    } else if let Some(n) = a.shared_leaf {
        ("shared_leaf", shared_leaf_value(n).map_err(prob_err)?)
    } else {
        let n = a.copy.expect("clap enforces one bound");
        let h = graph(need(&a.graph, "--graph")?)?;
        ("copy", copy_union_bound(n, &h).map_err(prob_err)?)
    };
    let mut summary = vec![format!("{}: ln value {:.6}, value {:.6e} ({:?})", report.expression, report.log_value, report.value, report.verdict)];
    summary.extend(report.steps.iter().map(|s| format!("{} {}", s.expression, if s.holds { "holds" } else { "FAILS" })));
    summary.extend(report.constraints.iter().filter(|c| !c.holds).map(|c| format!("constraint {} fails: {}", c.name, c.detail)));
    let code = if report.chain_holds() { EXIT_OK } else { EXIT_UNKNOWN };
    Ok(Outcome::new(code, &json!({ "bound": name, "report": report }), summary))
}

pub fn estimate(a: &EstimateArgs) -> Result<Outcome, CliError> {
    let h = graph(&a.graph)?;
    let est = monte_carlo_polychromatic(a.n, &h, a.trials, a.seed).map_err(prob_err)?;
    let mut summary = vec![format!(
        "P(not polychromatic) ~ {:.6} in [{:.6}, {:.6}] at 99%",
        est.estimate, est.ci_low, est.ci_high
    )];
    let exact = if a.exact {
        let p = exact_non_polychromatic_probability(a.n, &h).map_err(prob_err)?;
        summary.push(format!("exact {p:.6}"));
        Some(p)
    } else {
        None
    };
    let bound = if a.bound {
        let r = copy_union_bound(a.n as u64, &h).map_err(prob_err)?;
        summary.push(format!("union bound {:.6e}", r.value));
        Some(r)
    } else {
        None
    };
    let inside = exact.map(|p| est.ci_low <= p && p <= est.ci_high);
    Ok(Outcome::new(
        EXIT_OK,
        &json!({ "estimate": est, "exact": exact, "exact_inside_interval": inside, "union_bound": bound }),
        summary,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slugs() {
        assert_eq!(slug("K3"), "K3");
        assert_eq!(slug("broom:3,4"), "broom_3_4");
        assert_eq!(slug("graph(n=4, m=3)"), "graph_n_4__m_3");
    }

    #[test]
    fn painters_resolve() {
        assert!(resolve_painter("random", None).is_err());
        assert!(resolve_painter("random", Some(3)).is_ok());
        assert_eq!(resolve_painter("scripted:0110", None).unwrap().name(), "scripted");
        assert!(resolve_painter("scripted:012", None).is_err());
    }
}
