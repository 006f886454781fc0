use std::fmt::Write as _;
use std::time::Instant;

use anyhow::Result;
use serde::Serialize;
use wsc_core::{Answer, Verdict, Witness};

/// One check on one input.
#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub check: String,
    pub input: String,
    pub automorphism: Option<String>,
    pub vertices: usize,
    pub trusted: usize,
    pub verdict: Answer,
    pub witness: Option<Witness>,
    pub witness_text: Option<String>,
    pub note: Option<String>,
    pub wall_ms: f64,
}

/// Identifies the subject of a record.
#[derive(Clone)]
pub struct Subject<'a> {
    pub input: &'a str,
    pub automorphism: Option<&'a str>,
    pub vertices: usize,
    pub trusted: usize,
}

impl Subject<'_> {
    /// Times `f` and wraps its verdict.
    pub fn run(&self, check: &str, f: impl FnOnce() -> Result<Verdict>) -> Result<Record> {
        let t = Instant::now();
        let v = f()?;
        Ok(self.record(check, v, t.elapsed().as_secs_f64() * 1e3))
    }

    pub fn record(&self, check: &str, v: Verdict, wall_ms: f64) -> Record {
        Record {
            check: check.to_string(),
            input: self.input.to_string(),
            automorphism: self.automorphism.map(str::to_string),
            vertices: self.vertices,
            trusted: self.trusted,
            verdict: v.answer,
            witness_text: v.witness.as_ref().map(|w| w.to_string()),
            witness: v.witness,
            note: v.note,
            wall_ms,
        }
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One `key=value` line per record; `wall_ms` is always last.
pub fn text(records: &[Record]) -> String {
    let mut out = String::new();
    for r in records {
        write!(
            out,
            "check={} input={} automorphism={} trusted={}/{} verdict={}",
            r.check,
            r.input,
            r.automorphism.as_deref().unwrap_or("-"),
            r.trusted,
            r.vertices,
            r.verdict
        )
        .expect("string");
        if let Some(w) = &r.witness_text {
            write!(out, " witness={}", quote(w)).expect("string");
        }
        if let Some(n) = &r.note {
            write!(out, " note={}", quote(n)).expect("string");
        }
        writeln!(out, " wall_ms={:.3}", r.wall_ms).expect("string");
    }
    out
}

#[derive(Serialize)]
struct Document<'a> {
    records: &'a [Record],
}

pub fn structured(records: &[Record]) -> String {
    let mut s = serde_json::to_string_pretty(&Document { records }).expect("records serialize");
    s.push('\n');
    s
}
