mod artifact;
mod builders;
mod commands;
mod interactive;
mod output;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use output::{envelope, print, render_text, write_file, CliError, Outcome, EXIT_USAGE};

#[derive(Parser, Debug, Serialize)]
#[command(name = "turnaround", version, about = "Online Ramsey turnaround game toolkit")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Auto,
    Exhaustive,
    Backtracking,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "snake_case", tag = "name")]
pub enum Command {
    /// Compute xi(H), writing witness and refutation certificates.
    Xi(XiArgs),
    /// Decide whether H is xi-primitive.
    Primitive(PrimitiveArgs),
    /// Build one of the explicit colourings.
    Construct(ConstructArgs),
    /// Check a colouring, a Builder strategy, a Ramsey claim or a saved artifact.
    Verify(VerifyArgs),
    /// Play one game, optionally with a human on one side.
    Play(PlayArgs),
    /// Solve the game exactly on a small board, or bracket f(H).
    Solve(SolveArgs),
    /// Evaluate the union bounds and their thresholds.
    Bounds(BoundsArgs),
    /// Monte Carlo estimate of the chance a random colouring is not polychromatic.
    Estimate(EstimateArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Xi(_) => "xi",
            Command::Primitive(_) => "primitive",
            Command::Construct(_) => "construct",
            Command::Verify(_) => "verify",
            Command::Play(_) => "play",
            Command::Solve(_) => "solve",
            Command::Bounds(_) => "bounds",
            Command::Estimate(_) => "estimate",
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct XiArgs {
    /// Target graph spec, e.g. K3, P4, star:3, broom:3,4, file:h.g6.
    #[arg(long, alias = "target")]
    pub graph: String,
    /// Largest board searched.
    #[arg(long)]
    pub cap: usize,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    pub mode: Mode,
    /// Node budget per backtracking search.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Search every board up to the cap, even after a refutation.
    #[arg(long)]
    pub all_n: bool,
    /// Directory for certificates (default: beside the report, else the working directory).
    #[arg(long)]
    pub certs: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct PrimitiveArgs {
    #[arg(long, alias = "target")]
    pub graph: String,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    pub mode: Mode,
    #[arg(long)]
    pub budget: Option<u64>,
    /// Where the witness goes if H is not primitive.
    #[arg(long, default_value = "counterexample.json")]
    pub out: PathBuf,
}

#[derive(Args, Debug, Serialize)]
#[command(group(ArgGroup::new("which").required(true).args(["balanced", "matching", "k3_matching", "k4_grid", "split", "turan"])))]
pub struct ConstructArgs {
    /// Balanced colouring of K_n.
    #[arg(long, value_name = "N")]
    pub balanced: Option<usize>,
    /// Colouring of K_n with no large bi-coloured matching.
    #[arg(long, value_name = "N")]
    pub matching: Option<usize>,
    /// The three-matching colouring of K_4.
    #[arg(long)]
    pub k3_matching: bool,
    /// The grid colouring of K_9.
    #[arg(long)]
    pub k4_grid: bool,
    /// Split colouring of K_N with a part of size A.
    #[arg(long, num_args = 2, value_names = ["N", "A"])]
    pub split: Option<Vec<usize>>,
    /// T(N,4) coloured by blowing up the K_4 three-matching colouring.
    #[arg(long, value_name = "N")]
    pub turan: Option<usize>,
    /// Output file; .csv, .dot or .json.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
#[command(group(ArgGroup::new("check").required(true).args(["balanced", "polychromatic", "builder", "ramsey", "matching", "counterexample", "refutation"])))]
pub struct VerifyArgs {
    /// Colouring file to check for balance.
    #[arg(long, value_name = "FILE")]
    pub balanced: Option<PathBuf>,
    /// Colouring file to check for polychromaticity (needs --graph).
    #[arg(long, value_name = "FILE")]
    pub polychromatic: Option<PathBuf>,
    /// Builder strategy to verify against every Painter.
    #[arg(long, value_name = "NAME")]
    pub builder: Option<String>,
    /// Every red/blue colouring of K_n has a monochromatic copy.
    #[arg(long)]
    pub ramsey: bool,
    /// Bi-coloured matchings in the matching construction on K_N.
    #[arg(long, value_name = "N")]
    pub matching: Option<usize>,
    /// Re-check a counterexample artifact.
    #[arg(long, value_name = "FILE")]
    pub counterexample: Option<PathBuf>,
    /// Re-run the search behind a refutation certificate.
    #[arg(long, value_name = "FILE")]
    pub refutation: Option<PathBuf>,
    #[arg(long, alias = "target")]
    pub graph: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub budget: Option<u64>,
    /// Where a counterexample goes.
    #[arg(long, default_value = "counterexample.json")]
    pub out: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Builder,
    Painter,
}

#[derive(Args, Debug, Serialize)]
pub struct PlayArgs {
    #[arg(long, required_unless_present = "replay")]
    pub n: Option<usize>,
    #[arg(long, alias = "target", required_unless_present = "replay")]
    pub graph: Option<String>,
    #[arg(long, default_value = "sequential")]
    pub builder: String,
    /// two-color, random, greedy or scripted:<bits>.
    #[arg(long, default_value = "two-color")]
    pub painter: String,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Let a human on stdin take one side.
    #[arg(long, value_enum)]
    pub interactive: Option<Side>,
    /// Write the transcript here.
    #[arg(long)]
    pub transcript: Option<PathBuf>,
    /// Replay a saved transcript instead of playing (needs --n and --graph).
    #[arg(long, value_name = "FILE", requires_all = ["n", "graph"])]
    pub replay: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct SolveArgs {
    #[arg(long, alias = "target")]
    pub graph: String,
    #[arg(long, required_unless_present = "f")]
    pub n: Option<usize>,
    /// Position budget.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub no_vertex_symmetry: bool,
    /// Bracket f(H) over boards up to --n-max.
    #[arg(long)]
    pub f: bool,
    #[arg(long, default_value_t = 7)]
    pub n_max: usize,
}

#[derive(Args, Debug, Serialize)]
#[command(group(ArgGroup::new("bound").required(true).args([
    "clique", "tree", "appendix", "appendix_threshold", "double_star_threshold",
    "shared_leaf_threshold", "double_star", "shared_leaf", "copy",
])))]
pub struct BoundsArgs {
    /// Clique bound for K_T.
    #[arg(long, value_name = "T")]
    pub clique: Option<u64>,
    /// Tree bound at (N, A, B).
    #[arg(long, num_args = 3, value_names = ["N", "A", "B"])]
    pub tree: Option<Vec<u64>>,
    /// Appendix chain at (N, A, B).
    #[arg(long, num_args = 3, value_names = ["N", "A", "B"])]
    pub appendix: Option<Vec<u64>>,
    /// Evaluate the appendix chain even outside its regime.
    #[arg(long, requires = "appendix")]
    pub unchecked: bool,
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    pub appendix_threshold: Option<Vec<u64>>,
    #[arg(long)]
    pub double_star_threshold: bool,
    #[arg(long)]
    pub shared_leaf_threshold: bool,
    #[arg(long, value_name = "N")]
    pub double_star: Option<u64>,
    #[arg(long, value_name = "N")]
    pub shared_leaf: Option<u64>,
    /// Expected bi-coloured copies of --graph in a random colouring of K_N.
    #[arg(long, value_name = "N", requires = "graph")]
    pub copy: Option<u64>,
    #[arg(long, alias = "target")]
    pub graph: Option<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct EstimateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, alias = "target")]
    pub graph: String,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long)]
    pub seed: u64,
    /// Also enumerate every colouring (small boards only).
    #[arg(long)]
    pub exact: bool,
    /// Also report the union bound on the same board.
    #[arg(long)]
    pub bound: bool,
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Xi(a) => commands::xi(a, cli.report.as_deref()),
        Command::Primitive(a) => commands::primitive(a),
        Command::Construct(a) => commands::construct(a),
        Command::Verify(a) => commands::verify(a),
        Command::Play(a) => commands::play(a),
        Command::Solve(a) => commands::solve(a),
        Command::Bounds(a) => commands::bounds(a),
        Command::Estimate(a) => commands::estimate(a),
    }
}

fn main() -> ExitCode {
    let mut cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let threads = cli.threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if threads == 0 {
        eprintln!("error: --threads must be at least 1");
        return ExitCode::from(EXIT_USAGE as u8);
    }
    cli.threads = Some(threads);
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
        eprintln!("warning: {e}");
    }

    let start = Instant::now();
    let result = run(&cli);
    let wall = start.elapsed().as_secs_f64();
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {}", e.message);
            if e.code == EXIT_USAGE {
                return ExitCode::from(EXIT_USAGE as u8);
            }
            Outcome::new(e.code, &serde_json::json!({ "error": e.message }), vec![e.message.clone()])
        }
    };

    let config = serde_json::to_value(&cli).expect("config serializes");
    let report = envelope(cli.command.name(), &config, &outcome, wall);
    let json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    if let Some(path) = &cli.report {
        if let Err(e) = write_file(path, &json) {
            eprintln!("error: {}", e.message);
        }
    }
    match cli.format {
        Format::Json => print(&json),
        Format::Text => print(&render_text(cli.command.name(), &outcome, wall)),
    }
    ExitCode::from(outcome.code as u8)
}
