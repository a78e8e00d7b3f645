use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::input::InputDigest;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_ok(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// One named check inside a report.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub status: Status,
    pub detail: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub status: Status,
    pub results: Vec<CheckResult>,
    pub wall_time_secs: f64,
}

/// Collects checks and human-readable lines while a command runs.
pub struct Run {
    command: String,
    start: Instant,
    pub inputs: Vec<InputDigest>,
    pub results: Vec<CheckResult>,
    pub lines: Vec<String>,
}

impl Run {
    pub fn new(command: &str) -> Self {
        Run { command: command.to_string(), start: Instant::now(), inputs: Vec::new(), results: Vec::new(), lines: Vec::new() }
    }

    pub fn input(&mut self, d: InputDigest) {
        self.inputs.push(d);
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    /// Records a check and a PASS/FAIL line for it.
    pub fn check(&mut self, name: &str, ok: bool, summary: impl AsRef<str>, detail: Value) {
        let tag = if ok { "PASS" } else { "FAIL" };
        self.lines.push(format!("{tag} {name}: {}", summary.as_ref()));
        self.results.push(CheckResult { check: name.to_string(), status: Status::from_ok(ok), detail });
    }

    /// An informational entry that cannot fail.
    pub fn value(&mut self, name: &str, detail: Value) {
        self.results.push(CheckResult { check: name.to_string(), status: Status::Pass, detail });
    }

    pub fn finish(self) -> (RunReport, Vec<String>) {
        let ok = self.results.iter().all(|r| r.status == Status::Pass);
        let report = RunReport {
            schema: SCHEMA,
            command: self.command,
            inputs: self.inputs,
            status: Status::from_ok(ok),
            results: self.results,
            wall_time_secs: self.start.elapsed().as_secs_f64(),
        };
        (report, self.lines)
    }
}
