//! Machine-readable verification reports.
//!
//! Reports are deterministic: struct fields serialize in declaration order,
//! map-valued inputs/outputs use sorted keys, and nothing time- or
//! environment-dependent enters the canonical body. Identical inputs
//! produce byte-identical JSON.

use serde::Serialize;
use serde_json::Value;

/// One named check: what was verified, against which mathematical statement,
/// with the observed verdict and the independently derived expectation.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    /// The mathematical statement the check exercises.
    pub anchor: String,
    pub inputs: Value,
    pub outputs: Value,
    pub verdict: String,
    pub expected: String,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.verdict == self.expected
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub version: String,
    pub fixture: String,
    pub checks: Vec<CheckRecord>,
    pub status: Status,
    /// Interpretation caveats: every computation runs over the prime field,
    /// while the statements being modeled concern algebraically closed
    /// bases.
    pub caveats: Vec<String>,
}

pub const PRIME_FIELD_CAVEAT: &str = "all computations run over the prime field F_p; \
statements about algebraically closed base fields are checked through their F_p-rational avatars";

pub const CONNECTEDNESS_CAVEAT: &str = "connectedness is decided over F_p(x); geometric \
connectedness over the algebraic closure can be strictly finer";

impl VerificationReport {
    /// Builds a report, deriving the overall status from the checks.
    pub fn new(fixture: String, checks: Vec<CheckRecord>, caveats: Vec<String>) -> Self {
        let status = if checks.iter().all(CheckRecord::passed) {
            Status::Pass
        } else {
            Status::Fail
        };
        VerificationReport {
            version: env!("CARGO_PKG_VERSION").to_string(),
            fixture,
            checks,
            status,
            caveats,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }

    /// Plain-text rendering derived from the same data as the JSON body.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("torsor-verify {}\n", self.version));
        out.push_str(&format!("fixture: {}\n", self.fixture));
        for check in &self.checks {
            let mark = if check.passed() { "pass" } else { "FAIL" };
            out.push_str(&format!(
                "[{mark}] {} — {}\n       verdict: {}   expected: {}\n",
                check.id, check.anchor, check.verdict, check.expected
            ));
            if let Value::Object(map) = &check.outputs {
                for (k, v) in map {
                    out.push_str(&format!("       {k}: {v}\n"));
                }
            }
        }
        for caveat in &self.caveats {
            out.push_str(&format!("note: {caveat}\n"));
        }
        out.push_str(&format!(
            "status: {}\n",
            match self.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
            }
        ));
        out
    }
}

/// Convenience constructor for check records with JSON-object inputs and
/// outputs.
pub fn check(
    id: impl Into<String>,
    anchor: impl Into<String>,
    inputs: Value,
    outputs: Value,
    verdict: impl Into<String>,
    expected: impl Into<String>,
) -> CheckRecord {
    CheckRecord {
        id: id.into(),
        anchor: anchor.into(),
        inputs,
        outputs,
        verdict: verdict.into(),
        expected: expected.into(),
    }
}
