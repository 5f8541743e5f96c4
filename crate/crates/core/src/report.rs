//! Machine-readable outcomes of criterion checks.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    NotApplicable,
    Indeterminate,
    Fail,
}

impl Verdict {
    /// Process exit status for a run whose outcome is this verdict.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass | Verdict::NotApplicable => 0,
            Verdict::Fail => 1,
            Verdict::Indeterminate => 2,
        }
    }

    /// Aggregate of several verdicts: any FAIL wins, then INDETERMINATE.
    pub fn combine(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Indeterminate, _) | (_, Verdict::Indeterminate) => Verdict::Indeterminate,
            (Verdict::Pass, _) | (_, Verdict::Pass) => Verdict::Pass,
            _ => Verdict::NotApplicable,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Indeterminate => "INDETERMINATE",
            Verdict::NotApplicable => "NOT_APPLICABLE",
        })
    }
}

/// Structured evidence attached to a report. Sets and words use generator names.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Edge { u: String, v: String, m: u32, completion: Vec<String> },
    Subset { role: String, members: Vec<String> },
    Triangle { vertices: Vec<String>, labels: Vec<u32> },
    Words { role: String, words: Vec<String> },
    Cycle { vertices: Vec<String>, fullness: String, reason: String },
    Splitting { gamma1: Vec<String>, gamma2: Vec<String>, core: Vec<String> },
    Distance { u: String, v: String, radians: Option<f64> },
    Report(Box<CertificateReport>),
    /// Exhaustiveness statement or other free-form evidence.
    Statement { text: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateReport {
    pub criterion: String,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    #[serde(rename = "bounds")]
    pub parameters: BTreeMap<String, Value>,
    pub notes: Vec<String>,
}

impl CertificateReport {
    pub fn new(criterion: impl Into<String>, verdict: Verdict) -> Self {
        CertificateReport {
            criterion: criterion.into(),
            verdict,
            witnesses: Vec::new(),
            parameters: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn witness(mut self, w: Witness) -> Self {
        self.witnesses.push(w);
        self
    }

    pub fn note(mut self, text: impl Into<String>) -> Self {
        self.notes.push(text.into());
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}
