//! Runner for the acceptance criteria: each criterion is a function with a
//! time budget, and the runner prints one line per criterion.

use std::time::{Duration, Instant};

/// Result of one criterion: pass or fail plus a one-line explanation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    pub fn pass(detail: impl Into<String>) -> Self {
        Self { passed: true, detail: detail.into() }
    }

    pub fn fail(detail: impl Into<String>) -> Self {
        Self { passed: false, detail: detail.into() }
    }

    /// Fails with every collected problem, or passes with `detail`.
    pub fn from_problems(problems: Vec<String>, detail: impl Into<String>) -> Self {
        if problems.is_empty() {
            Self::pass(detail)
        } else {
            Self::fail(problems.join("; "))
        }
    }
}

pub struct Criterion {
    pub id: &'static str,
    pub title: &'static str,
    /// Wall-clock limit; `None` when only exactness is required.
    pub budget: Option<Duration>,
    pub run: fn() -> Outcome,
}

/// Outcome of a criterion after the time limit is applied.
pub fn evaluate(c: &Criterion) -> (Outcome, Duration) {
    let start = Instant::now();
    let outcome = (c.run)();
    let elapsed = start.elapsed();
    match c.budget {
        Some(b) if elapsed > b => {
            let detail = format!("{} [over time: {:.2?} > {:.2?}]", outcome.detail, elapsed, b);
            (Outcome::fail(detail), elapsed)
        }
        _ => (outcome, elapsed),
    }
}

pub fn format_line(c: &Criterion, outcome: &Outcome, elapsed: Duration) -> String {
    let tag = if outcome.passed { "PASS" } else { "FAIL" };
    let limit = c.budget.map_or(String::new(), |b| format!(" / {:.0?}", b));
    format!("{tag} criterion {}: {} ({:.2?}{limit}) {}", c.id, c.title, elapsed, outcome.detail)
}

/// Runs every criterion, printing a line as each finishes, and returns the
/// number of failures.
pub fn run_all(criteria: &[Criterion]) -> usize {
    let mut failed = 0;
    for c in criteria {
        let (outcome, elapsed) = evaluate(c);
        println!("{}", format_line(c, &outcome, elapsed));
        if !outcome.passed {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    failed
}
