use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    NotChecked,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pass => "PASS",
            Self::Fail => "FAIL",
            Self::NotChecked => "not checked (out of scope)",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub witnesses: Vec<String>,
    pub counts: BTreeMap<String, i64>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Self { name: name.into(), verdict: Verdict::Pass, witnesses: Vec::new(), counts: BTreeMap::new() }
    }

    /// A failure must name at least one concrete witness.
    pub fn fail(name: impl Into<String>, witnesses: Vec<String>) -> Self {
        assert!(!witnesses.is_empty(), "failed checks carry a witness");
        Self { name: name.into(), verdict: Verdict::Fail, witnesses, counts: BTreeMap::new() }
    }

    pub fn not_checked(name: impl Into<String>) -> Self {
        Self { name: name.into(), verdict: Verdict::NotChecked, witnesses: Vec::new(), counts: BTreeMap::new() }
    }

    /// Pass when `witnesses` is empty, fail otherwise.
    pub fn from_witnesses(name: impl Into<String>, witnesses: Vec<String>) -> Self {
        if witnesses.is_empty() {
            Self::pass(name)
        } else {
            Self::fail(name, witnesses)
        }
    }

    pub fn count(mut self, key: &str, value: impl TryInto<i64>) -> Self {
        self.counts.insert(key.to_string(), value.try_into().unwrap_or(i64::MAX));
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Section {
    pub title: String,
    pub lines: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub input: Option<String>,
    pub sections: Vec<Section>,
    /// Key results in machine-readable form, e.g. `t^7 -> 0`.
    pub facts: BTreeMap<String, String>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &str, input: Option<String>) -> Self {
        Self { command: command.to_string(), input, sections: Vec::new(), facts: BTreeMap::new(), checks: Vec::new() }
    }

    pub fn section(&mut self, title: impl Into<String>, lines: Vec<String>) {
        self.sections.push(Section { title: title.into(), lines });
    }

    pub fn fact(&mut self, key: impl Into<String>, value: impl ToString) {
        self.facts.insert(key.into(), value.to_string());
    }

    pub fn check(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn exit_code(&self) -> u8 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        match &self.input {
            Some(path) => writeln!(out, "kyfan {} {path}", self.command),
            None => writeln!(out, "kyfan {}", self.command),
        }
        .unwrap();
        for s in &self.sections {
            writeln!(out, "\n== {} ==", s.title).unwrap();
            for l in &s.lines {
                writeln!(out, "  {l}").unwrap();
            }
        }
        if !self.checks.is_empty() {
            writeln!(out, "\n== checks ==").unwrap();
        }
        for c in &self.checks {
            let counts: Vec<String> = c.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
            if counts.is_empty() {
                writeln!(out, "  [{}] {}", c.verdict, c.name).unwrap();
            } else {
                writeln!(out, "  [{}] {} ({})", c.verdict, c.name, counts.join(", ")).unwrap();
            }
            for w in c.witnesses.iter().take(20) {
                writeln!(out, "      witness: {w}").unwrap();
            }
            if c.witnesses.len() > 20 {
                writeln!(out, "      ... {} more", c.witnesses.len() - 20).unwrap();
            }
        }
        writeln!(out, "\nverdict: {}", if self.passed() { "pass" } else { "fail" }).unwrap();
        out
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_verdicts() {
        let mut r = Report::new("validate", None);
        r.check(Check::pass("a"));
        r.check(Check::not_checked("b"));
        assert_eq!(r.exit_code(), 0);
        r.check(Check::fail("c", vec!["vertex x".into()]));
        assert_eq!(r.exit_code(), 1);
        let text = r.render_text();
        assert!(text.contains("[not checked (out of scope)] b"));
        assert!(text.contains("witness: vertex x"));
        assert!(r.render_json().contains("\"not_checked\""));
    }

    #[test]
    #[should_panic]
    fn failures_need_witnesses() {
        Check::fail("x", Vec::new());
    }
}
