use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

/// One named check. Only mandatory checks enter the verdict.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub mandatory: bool,
    pub slack: Option<Value>,
    pub witness: Option<Value>,
}

impl Check {
    pub fn new(name: impl Into<String>, holds: bool) -> Self {
        Check { name: name.into(), holds, mandatory: true, slack: None, witness: None }
    }

    pub fn info(name: impl Into<String>, holds: bool) -> Self {
        Check { mandatory: false, ..Check::new(name, holds) }
    }

    pub fn slack(mut self, s: impl Serialize) -> Self {
        self.slack = serde_json::to_value(s).ok();
        self
    }

    pub fn witness(mut self, w: impl Serialize) -> Self {
        self.witness = serde_json::to_value(w).ok().filter(|v| !v.is_null());
        self
    }
}

/// Settings every report echoes back.
#[derive(Clone, Debug, Serialize)]
pub struct Header {
    pub command: String,
    pub inputs: Vec<String>,
    pub eps: f64,
    pub seed: u64,
    pub t_samples: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub header: Header,
    pub verdict: bool,
    pub checks: Vec<Check>,
    pub details: Value,
}

impl Report {
    pub fn new(header: Header, checks: Vec<Check>, details: impl Serialize) -> Self {
        let verdict = checks.iter().filter(|c| c.mandatory).all(|c| c.holds);
        Report { header, verdict, checks, details: serde_json::to_value(details).unwrap_or(Value::Null) }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self, elapsed: f64) -> String {
        let h = &self.header;
        let mut out = String::new();
        writeln!(out, "combatlas {} {}", h.command, h.inputs.join(" ")).ok();
        writeln!(out, "  eps {:e}  seed {}  t-samples {}", h.eps, h.seed, h.t_samples.join(",")).ok();
        for c in &self.checks {
            let tag = match (c.holds, c.mandatory) {
                (true, _) => "PASS",
                (false, true) => "FAIL",
                (false, false) => "note",
            };
            write!(out, "  [{tag}] {}", c.name).ok();
            if let Some(s) = &c.slack {
                write!(out, "  slack {}", plain(s)).ok();
            }
            writeln!(out).ok();
            if let Some(w) = &c.witness {
                writeln!(out, "         witness {w}").ok();
            }
        }
        writeln!(out, "verdict: {}  ({elapsed:.3} s)", self.verdict).ok();
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
