//! Machine-readable verification reports.

use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

/// Outcome of checking one identity over a family of instances.
///
/// A failing report always carries the first counterexample found.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub subject: String,
    pub instances: usize,
    pub passed: usize,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub wall_ms: f64,
}

/// Accumulates instance results for a [`VerificationReport`].
pub struct ReportBuilder {
    subject: String,
    instances: usize,
    passed: usize,
    counterexample: Option<Value>,
    note: Option<String>,
    started: Instant,
}

impl ReportBuilder {
    pub fn new(subject: impl Into<String>) -> Self {
        ReportBuilder {
            subject: subject.into(),
            instances: 0,
            passed: 0,
            counterexample: None,
            note: None,
            started: Instant::now(),
        }
    }

    /// Records one instance; `witness` is only evaluated for the first failure.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> Value) -> bool {
        self.instances += 1;
        if ok {
            self.passed += 1;
        } else if self.counterexample.is_none() {
            self.counterexample = Some(witness());
        }
        ok
    }

    /// Folds in per-instance results computed elsewhere (e.g. in parallel).
    pub fn extend(&mut self, results: impl IntoIterator<Item = Option<Value>>) {
        for r in results {
            match r {
                None => {
                    self.instances += 1;
                    self.passed += 1;
                }
                Some(w) => {
                    self.check(false, || w);
                }
            }
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.note = Some(note.into());
    }

    pub fn finish(self) -> VerificationReport {
        let pass = self.instances == self.passed;
        VerificationReport {
            subject: self.subject,
            instances: self.instances,
            passed: self.passed,
            pass,
            counterexample: if pass { None } else { self.counterexample },
            note: self.note,
            wall_ms: self.started.elapsed().as_secs_f64() * 1e3,
        }
    }
}
