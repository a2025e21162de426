//! One line per acceptance criterion, written straight to stdout so it shows
//! up even when the test harness captures output.

use std::io::Write;
use std::time::{Duration, Instant};

pub struct Check {
    number: u32,
    title: &'static str,
    start: Instant,
    notes: Vec<String>,
    failures: Vec<String>,
}

impl Check {
    pub fn start(number: u32, title: &'static str) -> Check {
        Check { number, title, start: Instant::now(), notes: Vec::new(), failures: Vec::new() }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Records a failure unless `ok`; returns `ok`.
    pub fn expect(&mut self, ok: bool, what: impl Into<String>) -> bool {
        if !ok {
            self.failures.push(what.into());
        }
        ok
    }

    pub fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }

    /// Prints the verdict line and panics if anything failed.
    pub fn finish(mut self, limit: Duration) {
        let took = self.start.elapsed();
        if took > limit {
            self.failures.push(format!("took {:.2}s, limit {:.2}s", took.as_secs_f64(), limit.as_secs_f64()));
        }
        let verdict = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        let mut line = format!("criterion {:>2} {verdict} {} ({:.2}s)", self.number, self.title, took.as_secs_f64());
        for n in &self.notes {
            line.push_str(&format!("\n    {n}"));
        }
        for f in &self.failures {
            line.push_str(&format!("\n    failed: {f}"));
        }
        line.push('\n');
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(line.as_bytes());
        let _ = out.flush();
        assert!(self.failures.is_empty(), "criterion {} failed: {:?}", self.number, self.failures);
    }
}
