//! Pass/fail bookkeeping for the acceptance suite.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

/// Result of one criterion: whether it held and what was measured.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub passed: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self { passed, detail: detail.into() }
    }
}

/// Folds several checks into one verdict; details are joined with "; ".
#[derive(Debug)]
pub struct Checks {
    passed: bool,
    notes: Vec<String>,
}

impl Default for Checks {
    fn default() -> Self {
        Self::new()
    }
}

impl Checks {
    pub fn new() -> Self {
        Self { passed: true, notes: Vec::new() }
    }

    pub fn check(&mut self, ok: bool, note: impl Into<String>) -> &mut Self {
        self.passed &= ok;
        let note = note.into();
        self.notes.push(if ok { note } else { format!("FAILED {note}") });
        self
    }

    pub fn verdict(&self) -> Verdict {
        Verdict::new(self.passed, self.notes.join("; "))
    }
}

pub struct Criterion {
    pub number: u32,
    pub title: &'static str,
    /// Wall-clock allowance; `None` when the criterion sets none.
    pub budget: Option<Duration>,
    pub run: fn() -> Verdict,
}

/// Runs one criterion, turning panics into failures and checking the budget.
pub fn evaluate(c: &Criterion) -> (Verdict, Duration) {
    let start = Instant::now();
    let verdict = catch_unwind(AssertUnwindSafe(c.run))
        .unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Verdict::new(false, format!("panicked: {msg}"))
        });
    let elapsed = start.elapsed();
    match c.budget {
        Some(budget) if elapsed > budget => {
            let detail = format!("{}; FAILED runtime {:.2} s exceeds {:.0} s", verdict.detail, elapsed.as_secs_f64(), budget.as_secs_f64());
            (Verdict::new(false, detail), elapsed)
        }
        _ => (verdict, elapsed),
    }
}

pub fn line(c: &Criterion, v: &Verdict, elapsed: Duration) -> String {
    format!(
        "{} criterion {:>2}: {} ({:.2} s) | {}",
        if v.passed { "PASS" } else { "FAIL" },
        c.number,
        c.title,
        elapsed.as_secs_f64(),
        v.detail
    )
}
