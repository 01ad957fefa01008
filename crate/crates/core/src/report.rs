//! Violation records shared by every checker, and the aggregated report.

use std::fmt;

use serde::{Deserialize, Serialize};

/// One failed identity instance: `{check, two_n, location, expected, actual}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub check: String,
    pub two_n: usize,
    pub location: String,
    pub expected: String,
    pub actual: String,
}

impl Violation {
    pub fn new(
        check: impl Into<String>,
        two_n: usize,
        location: impl Into<String>,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
    ) -> Self {
        Violation {
            check: check.into(),
            two_n,
            location: location.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] 2n={} at {}: expected {}, got {}",
            self.check, self.two_n, self.location, self.expected, self.actual
        )
    }
}

/// Pushes a violation when `expected != actual`.
pub(crate) fn expect_eq<T: PartialEq + fmt::Display>(
    out: &mut Vec<Violation>,
    check: &str,
    two_n: usize,
    location: impl FnOnce() -> String,
    expected: T,
    actual: T,
) {
    if expected != actual {
        out.push(Violation::new(check, two_n, location(), expected, actual));
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one check at one parameter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub parameter: String,
    pub status: Status,
    /// Number of instances examined.
    pub instances: usize,
    pub counterexample: Option<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub results: Vec<CheckResult>,
    pub overall: Status,
}

impl VerifyReport {
    pub fn new(results: Vec<CheckResult>) -> Self {
        let overall = if results.iter().all(|r| r.status == Status::Pass) {
            Status::Pass
        } else {
            Status::Fail
        };
        VerifyReport { results, overall }
    }

    pub fn passed(&self) -> bool {
        self.overall == Status::Pass
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            let status = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            write!(f, "{status} {:<10} {:<12} ({} instances)", r.check, r.parameter, r.instances)?;
            if let Some(v) = &r.counterexample {
                write!(f, "  first counterexample: {v}")?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "overall: {}",
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}
