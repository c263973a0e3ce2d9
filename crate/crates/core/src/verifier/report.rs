use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

/// Outcome of the classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// `z -> -1/z` is in the group.
    #[serde(rename = "a")]
    ContainsNegativeReciprocal,
    /// `p = 7` and the group has a normal subgroup of order 8.
    #[serde(rename = "b")]
    Exceptional,
    #[serde(rename = "hypotheses-failed")]
    HypothesesFailed,
    /// Neither conclusion could be established; only reachable if a check
    /// upstream is broken.
    #[serde(rename = "undetermined")]
    Undetermined,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ContainsNegativeReciprocal => "a",
            Verdict::Exceptional => "b",
            Verdict::HypothesesFailed => "hypotheses-failed",
            Verdict::Undetermined => "undetermined",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub pass: bool,
    pub witness: Value,
    pub counterexample: Option<Value>,
}

impl CheckResult {
    pub fn new(id: &str, pass: bool, witness: Value, counterexample: Option<Value>) -> Self {
        CheckResult {
            id: id.to_owned(),
            pass,
            witness,
            counterexample,
        }
    }

    pub fn passed(id: &str, witness: Value) -> Self {
        CheckResult::new(id, true, witness, None)
    }

    pub fn failed(id: &str, witness: Value, counterexample: Value) -> Self {
        CheckResult::new(id, false, witness, Some(counterexample))
    }

    /// Pass iff `counterexample` is `None`.
    pub fn from_counterexample(id: &str, witness: Value, counterexample: Option<Value>) -> Self {
        CheckResult::new(id, counterexample.is_none(), witness, counterexample)
    }
}

/// Ordered check results plus the verdict. Serializes to the report schema
/// `{p, verdict, witness, checks: [{id, pass, witness, counterexample}]}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub p: u32,
    pub verdict: Verdict,
    /// Cycle notation of the verdict's witness permutation, or empty.
    pub witness: String,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "p = {}", self.p).unwrap();
        for c in &self.checks {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            write!(out, "  {mark}  {}", c.id).unwrap();
            if let Some(ce) = &c.counterexample {
                write!(out, "  counterexample: {ce}").unwrap();
            }
            out.push('\n');
        }
        writeln!(out, "verdict: {}", self.verdict.as_str()).unwrap();
        if !self.witness.is_empty() {
            writeln!(out, "witness: {}", self.witness).unwrap();
        }
        out
    }
}
