use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::pi::PiSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    MainInequality,
    OrbitTheorem,
    PairExists,
    SmallCentralizer,
}

impl Check {
    pub const ALL: [Check; 4] = [
        Check::MainInequality,
        Check::OrbitTheorem,
        Check::PairExists,
        Check::SmallCentralizer,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Check::MainInequality => "main-inequality",
            Check::OrbitTheorem => "orbit-theorem",
            Check::PairExists => "pair-exists",
            Check::SmallCentralizer => "small-centralizer",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.as_str() == s.trim())
            .ok_or_else(|| Error::InvalidParameters(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Status {
    #[serde(rename = "OK")]
    Ok,
    #[serde(rename = "THEOREM-VIOLATION")]
    Violation,
    #[serde(rename = "EXPECTATION-MISMATCH")]
    ExpectationMismatch,
    #[serde(rename = "SKIPPED-HYPOTHESIS")]
    Skipped,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Ok => "OK",
            Status::Violation => "THEOREM-VIOLATION",
            Status::ExpectationMismatch => "EXPECTATION-MISMATCH",
            Status::Skipped => "SKIPPED-HYPOTHESIS",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpectationDiff {
    pub key: String,
    pub expected: Value,
    pub actual: Value,
}

/// One `(entry, π, check)` result.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationRecord {
    pub entry: String,
    pub pi: PiSet,
    pub check: Check,
    pub status: Status,
    pub holds: bool,
    /// Which hypotheses the instance satisfies, or why it was skipped.
    pub hypothesis: String,
    /// Headline numbers: `lhs`/`rhs` or counts, depending on the check.
    pub value: Option<u128>,
    pub bound: Option<u128>,
    pub seed: u64,
    pub details: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub expectation_diffs: Vec<ExpectationDiff>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl VerificationRecord {
    /// Sort key: failures first, then entry name, π and check.
    pub fn sort_key(&self) -> (bool, &str, usize, &PiSet, Check) {
        (self.holds, &self.entry, self.pi.primes().len(), &self.pi, self.check)
    }

    /// Compares the expectations addressed to this record with its details.
    /// Keys look like `orbit-theorem[2].qualifying`.
    pub fn apply_expectations<'a>(&mut self, expectations: impl IntoIterator<Item = (&'a String, &'a Value)>) {
        if self.status == Status::Skipped {
            return;
        }
        let prefix = format!("{}[{}].", self.check, self.pi);
        for (key, expected) in expectations {
            let Some(path) = key.strip_prefix(&prefix) else { continue };
            let actual = path
                .split('.')
                .try_fold(&self.details, |v, k| match v {
                    Value::Object(map) => map.get(k),
                    Value::Array(items) => k.parse::<usize>().ok().and_then(|i| items.get(i)),
                    _ => None,
                })
                .cloned()
                .unwrap_or(Value::Null);
            if &actual != expected {
                self.expectation_diffs.push(ExpectationDiff {
                    key: key.clone(),
                    expected: expected.clone(),
                    actual,
                });
            }
        }
        if !self.expectation_diffs.is_empty() {
            self.holds = false;
            if self.status == Status::Ok {
                self.status = Status::ExpectationMismatch;
            }
        }
    }
}
