//! Structured pass/fail reports for the verification suites.

use std::fmt;
use std::time::Duration;

use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Undecided,
}

impl fmt::Display for Status {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(out, "pass"),
            Status::Fail => write!(out, "fail"),
            Status::Undecided => write!(out, "undecided"),
        }
    }
}

/// The outcome of one named check at one parameter point.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub check_id: String,
    pub params: Value,
    pub status: Status,
    /// Counters and witnesses; a failing or undecided report always carries
    /// at least one entry explaining why.
    pub witnesses: Vec<Value>,
    pub wall_time: Duration,
}

impl CheckReport {
    pub fn to_json_line(&self) -> String {
        json!({
            "check_id": self.check_id,
            "params": self.params,
            "status": self.status.to_string(),
            "witnesses": self.witnesses,
            "wall_time_ms": self.wall_time.as_secs_f64() * 1e3,
        })
        .to_string()
    }

    pub fn summary_row(&self) -> String {
        format!(
            "{:<24} {:<9} {:>9.1} ms  {}",
            self.check_id,
            self.status.to_string(),
            self.wall_time.as_secs_f64() * 1e3,
            self.params
        )
    }
}

/// Collects sub-verdicts inside a check; the final status is `Fail` if any
/// failure was recorded, else `Undecided` if anything was left open, else
/// `Pass`.
#[derive(Debug, Default)]
pub struct Verdict {
    pub failures: Vec<Value>,
    pub undecided: Vec<Value>,
    pub notes: Vec<Value>,
}

impl Verdict {
    pub fn new() -> Verdict {
        Verdict::default()
    }

    pub fn require(&mut self, ok: bool, witness: impl Fn() -> Value) {
        if !ok {
            self.failures.push(witness());
        }
    }

    pub fn undecided(&mut self, witness: Value) {
        self.undecided.push(witness);
    }

    pub fn note(&mut self, v: Value) {
        self.notes.push(v);
    }

    pub fn into_report(
        self,
        check_id: &str,
        params: Value,
        wall_time: Duration,
    ) -> CheckReport {
        let status = if !self.failures.is_empty() {
            Status::Fail
        } else if !self.undecided.is_empty() {
            Status::Undecided
        } else {
            Status::Pass
        };
        let mut witnesses = self.notes;
        witnesses.extend(self.failures);
        witnesses.extend(self.undecided);
        CheckReport {
            check_id: check_id.to_string(),
            params,
            status,
            witnesses,
            wall_time,
        }
    }
}
