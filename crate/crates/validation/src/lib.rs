//! Reporting helpers for the `acceptance` test target.
//!
//! Each criterion yields one line, `criterion N: PASS|FAIL (Xs): detail`.
//! Informational lines start with `info:` and never affect the outcome.

use std::fmt::Write as _;
use std::time::Instant;

/// Outcome of one criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub passed: bool,
    pub detail: String,
}

impl Verdict {
    pub fn pass(detail: impl Into<String>) -> Self {
        Verdict {
            passed: true,
            detail: detail.into(),
        }
    }

    pub fn fail(detail: impl Into<String>) -> Self {
        Verdict {
            passed: false,
            detail: detail.into(),
        }
    }

    /// Combines sub-checks; fails if any part fails, and lists failing parts first.
    pub fn all(parts: Vec<Verdict>) -> Self {
        let passed = parts.iter().all(|p| p.passed);
        let mut ordered: Vec<&Verdict> = parts.iter().filter(|p| !p.passed).collect();
        ordered.extend(parts.iter().filter(|p| p.passed));
        let detail = ordered
            .iter()
            .map(|p| p.detail.as_str())
            .collect::<Vec<_>>()
            .join("; ");
        Verdict { passed, detail }
    }

    pub fn check(ok: bool, detail: impl Into<String>) -> Self {
        Verdict {
            passed: ok,
            detail: detail.into(),
        }
    }
}

/// Runs criteria in order and prints their lines as they finish.
#[derive(Debug, Default)]
pub struct Scorecard {
    results: Vec<(u32, bool)>,
}

impl Scorecard {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn run(&mut self, id: u32, f: impl FnOnce() -> Verdict) {
        let start = Instant::now();
        let v = f();
        let secs = start.elapsed().as_secs_f64();
        println!("{}", line(id, &v, secs));
        self.results.push((id, v.passed));
    }

    pub fn info(&self, text: impl AsRef<str>) {
        println!("info: {}", text.as_ref());
    }

    pub fn failed(&self) -> Vec<u32> {
        self.results
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(id, _)| *id)
            .collect()
    }

    /// Summary line; the process should exit nonzero when anything failed.
    pub fn summary(&self) -> String {
        let failed = self.failed();
        let mut s = format!(
            "{} of {} criteria passed",
            self.results.len() - failed.len(),
            self.results.len()
        );
        if !failed.is_empty() {
            let ids: Vec<String> = failed.iter().map(u32::to_string).collect();
            let _ = write!(s, "; failed: {}", ids.join(", "));
        }
        s
    }
}

fn line(id: u32, v: &Verdict, secs: f64) -> String {
    let tag = if v.passed { "PASS" } else { "FAIL" };
    format!("criterion {id}: {tag} ({secs:.1}s): {}", v.detail)
}

/// `true` when every element is strictly below its predecessor.
pub fn strictly_decreasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[1] < w[0])
}

/// `true` when every element is strictly above its predecessor.
pub fn strictly_increasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[1] > w[0])
}

/// Short rendering of a float sequence.
pub fn fmt_seq(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| format!("{x:.6}")).collect();
    format!("[{}]", parts.join(", "))
}
