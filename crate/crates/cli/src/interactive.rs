//! Human players reading moves from a line-oriented stream.
//!
//! Builder lines are `{"edge":[u,v],"forbidden":"G"}` or the shorthand
//! `u v G`; Painter lines are `{"chosen":"R"}`, `"R"` or just `R`. The board
//! and a prompt go to stderr before every move.

use std::io::{BufRead, IsTerminal, Write};
use std::sync::{Arc, Mutex};

use serde::Deserialize;
use turnaround::coloring::Color;
use turnaround::game::{Board, BuilderMove, BuilderStrategy, GameError, GameState, PainterStrategy, Round};

use crate::output::color_enabled;

pub type Input = Box<dyn BufRead + Send>;
pub type Prompt = Box<dyn Write + Send>;

struct Io {
    input: Input,
    prompt: Prompt,
}

impl Io {
    fn ask(&mut self, text: &str) -> Result<String, GameError> {
        let _ = write!(self.prompt, "{text}");
        let _ = self.prompt.flush();
        let mut line = String::new();
        match self.input.read_line(&mut line) {
            Ok(0) => Err(GameError::Input("input ended before the game did".into())),
            Ok(_) => Ok(line.trim().to_string()),
            Err(e) => Err(GameError::Input(e.to_string())),
        }
    }

    fn say(&mut self, text: &str) {
        let _ = writeln!(self.prompt, "{text}");
    }
}

fn cell(c: Option<Color>) -> String {
    let Some(c) = c else { return ".".into() };
    if !color_enabled(std::io::stderr().is_terminal()) {
        return c.code().to_string();
    }
    let ansi = match c {
        Color::Red => "31",
        Color::Blue => "34",
        Color::Green => "32",
    };
    format!("\x1b[{ansi}m{}\x1b[0m", c.code())
}

/// Upper-triangular colour matrix of the exposed edges.
pub fn render_board(state: &GameState) -> String {
    let n = state.n();
    let width = n.saturating_sub(1).to_string().len();
    let mut out = format!("round {} on K_{n}, target {}\n", state.rounds(), state.target().label());
    out.push_str(&" ".repeat(width + 1));
    for v in 0..n {
        out.push_str(&format!(" {v:>width$}"));
    }
    out.push('\n');
    for u in 0..n {
        out.push_str(&format!("{u:>width$} "));
        for v in 0..n {
            let c = if v > u { cell(state.color(u, v)) } else { " ".into() };
            out.push_str(&format!(" {}{c}", " ".repeat(width - 1)));
        }
        out.push('\n');
    }
    out
}

pub fn replay_state(board: &Arc<Board>, transcript: &[Round]) -> Result<GameState, GameError> {
    let mut state = GameState::new(board.clone());
    for r in transcript {
        state.apply(&BuilderMove::new(r.edge.0, r.edge.1, r.forbidden), r.chosen)?;
    }
    Ok(state)
}

#[derive(Deserialize)]
struct MoveLine {
    edge: (usize, usize),
    forbidden: Color,
}

#[derive(Deserialize)]
struct ColorLine {
    chosen: Color,
}

pub fn parse_move(line: &str) -> Option<BuilderMove> {
    if let Ok(m) = serde_json::from_str::<MoveLine>(line) {
        return Some(BuilderMove::new(m.edge.0, m.edge.1, m.forbidden));
    }
    let parts: Vec<&str> = line.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).collect();
    match parts.as_slice() {
        [u, v, f] => Some(BuilderMove::new(u.parse().ok()?, v.parse().ok()?, Color::from_code(f)?)),
        _ => None,
    }
}

pub fn parse_color(line: &str) -> Option<Color> {
    if let Ok(c) = serde_json::from_str::<ColorLine>(line) {
        return Some(c.chosen);
    }
    if let Ok(c) = serde_json::from_str::<Color>(line) {
        return Some(c);
    }
    Color::from_code(line)
}

pub struct HumanBuilder {
    io: Mutex<Io>,
}

impl HumanBuilder {
    pub fn new(input: Input, prompt: Prompt) -> HumanBuilder {
        HumanBuilder { io: Mutex::new(Io { input, prompt }) }
    }
}

impl BuilderStrategy for HumanBuilder {
    fn name(&self) -> String {
        "human".into()
    }

    fn next_move(&self, state: &GameState) -> Result<BuilderMove, GameError> {
        let mut io = self.io.lock().expect("input lock");
        io.say(&render_board(state));
        loop {
            let line = io.ask("builder move (u v forbidden)> ")?;
            match parse_move(&line) {
                Some(mv) => match state.check_move(&mv) {
                    Ok(_) => return Ok(mv),
                    Err(e) => io.say(&format!("illegal: {e}")),
                },
                None => io.say("expected `u v R|B|G` or {\"edge\":[u,v],\"forbidden\":\"G\"}"),
            }
        }
    }
}

pub struct HumanPainter {
    io: Io,
}

impl HumanPainter {
    pub fn new(input: Input, prompt: Prompt) -> HumanPainter {
        HumanPainter { io: Io { input, prompt } }
    }
}

impl PainterStrategy for HumanPainter {
    fn name(&self) -> String {
        "human".into()
    }

    fn choose(&mut self, state: &GameState, mv: &BuilderMove) -> Result<Color, GameError> {
        self.io.say(&render_board(state));
        let (u, v) = mv.edge;
        let [a, b] = mv.forbidden.others();
        loop {
            let line = self.io.ask(&format!("edge {u}-{v}, {} forbidden; colour {}|{}> ", mv.forbidden.code(), a.code(), b.code()))?;
            match parse_color(&line) {
                Some(c) if c != mv.forbidden => return Ok(c),
                Some(_) => self.io.say("that colour is forbidden"),
                None => self.io.say("expected R, B or G"),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;
    use turnaround::game::{play, Board, SequentialBuilder, TwoColorPainter};
    use turnaround::graph::make_clique;

    fn input(text: &str) -> Input {
        Box::new(Cursor::new(text.as_bytes().to_vec()))
    }

    #[test]
    fn parses_both_forms() {
        assert_eq!(parse_move("2 1 G"), Some(BuilderMove::new(1, 2, Color::Green)));
        assert_eq!(parse_move(r#"{"edge":[0,3],"forbidden":"R"}"#), Some(BuilderMove::new(0, 3, Color::Red)));
        assert_eq!(parse_move("0 1"), None);
        assert_eq!(parse_color(r#"{"chosen":"B"}"#), Some(Color::Blue));
        assert_eq!(parse_color("\"G\""), Some(Color::Green));
        assert_eq!(parse_color("r"), Some(Color::Red));
        assert_eq!(parse_color("x"), None);
    }

    #[test]
    fn human_painter_reprompts_on_bad_input() {
        let board = Board::new(3, make_clique(3).unwrap()).unwrap();
        let mut p = HumanPainter::new(input("G\nzz\nR\nR\nR\n"), Box::new(std::io::sink()));
        let out = play(&board, &SequentialBuilder::default(), &mut p).unwrap();
        assert_eq!(out.rounds, 3);
        assert!(out.transcript.iter().all(|r| r.chosen == Color::Red));
    }

    #[test]
    fn human_builder_skips_illegal_moves() {
        let board = Board::new(3, make_clique(3).unwrap()).unwrap();
        let b = HumanBuilder::new(input("0 1 G\n0 1 G\n0 2 R\n1 2 B\n"), Box::new(std::io::sink()));
        let out = play(&board, &b, &mut TwoColorPainter).unwrap();
        assert_eq!(out.rounds, 3);
        assert_eq!(out.transcript[1].edge, (0, 2));
    }

    #[test]
    fn eof_is_an_error() {
        let board = Board::new(3, make_clique(3).unwrap()).unwrap();
        let mut p = HumanPainter::new(input("R\n"), Box::new(std::io::sink()));
        assert!(play(&board, &SequentialBuilder::default(), &mut p).is_err());
    }
}
