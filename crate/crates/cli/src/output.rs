use std::fs;
use std::io::{IsTerminal, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

/// Exit codes shared by every subcommand.
pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> CliError {
        CliError { code: EXIT_USAGE, message: message.into() }
    }

    pub fn io(path: &Path, e: std::io::Error) -> CliError {
        CliError { code: EXIT_UNKNOWN, message: format!("{}: {e}", path.display()) }
    }
}

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> CliError {
        CliError::usage(e.to_string())
    }
}

/// What a subcommand hands back: the result document and the exit code.
pub struct Outcome {
    pub code: i32,
    pub result: Value,
    /// Short lines for text mode.
    pub summary: Vec<String>,
}

impl Outcome {
    pub fn new<T: Serialize>(code: i32, result: &T, summary: Vec<String>) -> Outcome {
        Outcome { code, result: serde_json::to_value(result).expect("serializable result"), summary }
    }
}

pub fn envelope(command: &str, config: &Value, outcome: &Outcome, wall_seconds: f64) -> Value {
    json!({
        "tool": "turnaround",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "config": config,
        "exit_code": outcome.code,
        "result": outcome.result,
        "timing": { "wall_seconds": wall_seconds },
    })
}

/// ANSI colour is used on terminals unless `NO_COLOR` is set.
pub fn color_enabled(stream_is_tty: bool) -> bool {
    stream_is_tty && std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty())
}

fn paint(text: &str, code: &str) -> String {
    if color_enabled(std::io::stdout().is_terminal()) {
        format!("\x1b[{code}m{text}\x1b[0m")
    } else {
        text.to_string()
    }
}

pub fn status_word(code: i32) -> String {
    match code {
        EXIT_OK => paint("ok", "32"),
        EXIT_FALSE => paint("false", "31"),
        _ => paint("indeterminate", "33"),
    }
}

pub fn render_text(command: &str, outcome: &Outcome, wall_seconds: f64) -> String {
    let mut out = format!("{command}: {}\n", status_word(outcome.code));
    for line in &outcome.summary {
        out.push_str("  ");
        out.push_str(line);
        out.push('\n');
    }
    out.push_str(&format!("  wall time: {wall_seconds:.3}s\n"));
    out
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

pub fn print(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
}
