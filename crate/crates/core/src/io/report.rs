//! Structured text reports.
//!
//! A report is a list of `[section]` headers followed by `key = value` lines
//! and optional whitespace-aligned tables. The first two lines are always
//! `schema = ...` and `tool = ...`; the last section is `[verdict]`. Every
//! distance is written as `<value> (exact|lower bound) budget=<n>`. Timings
//! follow a `--- timing ---` separator and are excluded from comparisons.

use std::fmt::Write;
use std::time::Duration;

use crate::distance::{DistanceBound, Verdict};

pub const SCHEMA: &str = "hgp-surgery-report/1";
pub const TOOL: &str = concat!("hgp-surgery ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub title: String,
    pub entries: Vec<(String, String)>,
    pub table: Option<Table>,
}

impl Section {
    pub fn new(title: impl Into<String>) -> Self {
        Self { title: title.into(), entries: vec![], table: None }
    }

    pub fn put(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.entries.push((key.into(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

/// One required check and its outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunReport {
    pub sections: Vec<Section>,
    pub checks: Vec<Check>,
    pub timings: Vec<(String, Duration)>,
}

impl RunReport {
    pub fn section(&self, title: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.title == title)
    }

    pub fn require(&mut self, name: impl Into<String>, verdict: Verdict) {
        self.checks.push(Check { name: name.into(), verdict });
    }

    pub fn verdict(&self) -> Verdict {
        Verdict::all(self.checks.iter().map(|c| c.verdict))
    }

    /// 0 pass, 1 a condition failed, 2 a search ran out of budget.
    pub fn exit_code(&self) -> i32 {
        match self.verdict() {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
        }
    }

    /// The deterministic part of the report.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "schema = {SCHEMA}");
        let _ = writeln!(out, "tool = {TOOL}");
        for s in &self.sections {
            let _ = writeln!(out, "\n[{}]", s.title);
            for (k, v) in &s.entries {
                let _ = writeln!(out, "{k} = {v}");
            }
            if let Some(t) = &s.table {
                render_table(&mut out, t);
            }
        }
        let _ = writeln!(out, "\n[verdict]");
        let mut failing = Table { header: vec!["check".into(), "verdict".into()], rows: vec![] };
        for c in &self.checks {
            failing.rows.push(vec![c.name.clone(), c.verdict.to_string()]);
        }
        render_table(&mut out, &failing);
        let _ = writeln!(out, "status = {}", self.verdict());
        let _ = writeln!(out, "exit = {}", self.exit_code());
        out
    }

    pub fn render_timings(&self) -> String {
        let mut out = String::from("--- timing ---\n");
        for (k, d) in &self.timings {
            let _ = writeln!(out, "{k}_ms = {:.3}", d.as_secs_f64() * 1e3);
        }
        out
    }
}

fn render_table(out: &mut String, t: &Table) {
    let cols = t.header.len();
    let width: Vec<usize> =
        (0..cols).map(|c| t.rows.iter().map(|r| r[c].len()).chain([t.header[c].len()]).max().unwrap_or(0)).collect();
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    let _ = writeln!(out, "{}", line(&t.header));
    for r in &t.rows {
        let _ = writeln!(out, "{}", line(r));
    }
}

pub fn distance_field(d: DistanceBound, budget: u64) -> String {
    format!("{d} budget={budget}")
}
