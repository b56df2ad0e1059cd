//! Report envelope shared by every pipeline: a list of named check entries
//! with certified brackets, rendered to JSON or CSV.
//!
//! Rendering is byte-deterministic: map keys are sorted, entry order is the
//! caller's, and floats print in Rust's shortest round-trip form with the
//! non-finite values spelled "inf", "-inf", "nan" (JSON has no literals for
//! them). The CSV column set is fixed; names and formulas never contain
//! commas, which keeps rows unquoted.

use std::collections::BTreeMap;
use std::fmt;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_NAME: &str = "strongb";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
            Status::Skipped => "skipped",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    pub bound: f64,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub status: Status,
    pub formula: String,
}

impl Entry {
    pub fn new(
        name: impl Into<String>,
        bound: f64,
        bracket: (f64, f64),
        status: Status,
        formula: impl Into<String>,
    ) -> Self {
        let name = name.into();
        let formula = formula.into();
        debug_assert!(!name.contains(','), "entry name must stay CSV-safe");
        debug_assert!(!formula.contains(','), "formula must stay CSV-safe");
        Entry { name, bound, bracket_lo: bracket.0, bracket_hi: bracket.1, status, formula }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub config: BTreeMap<String, String>,
    pub entries: Vec<Entry>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    pub skipped: usize,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64) -> Self {
        Report { command: command.into(), seed, config: BTreeMap::new(), entries: Vec::new() }
    }

    pub fn set_config(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.config.insert(key.into(), value.into());
    }

    pub fn push(&mut self, entry: Entry) {
        self.entries.push(entry);
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for e in &self.entries {
            match e.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Inconclusive => s.inconclusive += 1,
                Status::Skipped => s.skipped += 1,
            }
        }
        s
    }

    /// Process exit code: failures are fatal, inconclusive entries are not.
    pub fn exit_code(&self) -> i32 {
        if self.summary().fail > 0 {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        use serde_json::{json, Map, Value};
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                let mut m = Map::new();
                m.insert("name".into(), Value::String(e.name.clone()));
                m.insert("bound".into(), json_float(e.bound));
                m.insert("bracket_lo".into(), json_float(e.bracket_lo));
                m.insert("bracket_hi".into(), json_float(e.bracket_hi));
                m.insert("status".into(), Value::String(e.status.as_str().into()));
                m.insert("formula".into(), Value::String(e.formula.clone()));
                Value::Object(m)
            })
            .collect();
        let s = self.summary();
        let doc = json!({
            "schema": SCHEMA_VERSION,
            "tool": TOOL_NAME,
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "seed": self.seed,
            "config": self.config,
            "entries": entries,
            "summary": {
                "pass": s.pass,
                "fail": s.fail,
                "inconclusive": s.inconclusive,
                "skipped": s.skipped,
            },
        });
        let mut out = serde_json::to_string_pretty(&doc).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!(
            "# tool: {} {}\n# command: {}\n# seed: {}\n",
            TOOL_NAME,
            env!("CARGO_PKG_VERSION"),
            self.command,
            self.seed
        );
        for (k, v) in &self.config {
            out.push_str(&format!("# config: {k} = {v}\n"));
        }
        out.push_str("name,bound,bracket_lo,bracket_hi,status,formula\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                e.name,
                fmt_float(e.bound),
                fmt_float(e.bracket_lo),
                fmt_float(e.bracket_hi),
                e.status,
                e.formula
            ));
        }
        out
    }
}

/// Shortest round-trip decimal form, with ASCII names for non-finite values.
pub fn fmt_float<T: crate::scalar::Real>(x: T) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > T::zero() { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x}")
    }
}

fn json_float(x: f64) -> serde_json::Value {
    match serde_json::Number::from_f64(x) {
        Some(n) => serde_json::Value::Number(n),
        None => serde_json::Value::String(fmt_float(x)),
    }
}
