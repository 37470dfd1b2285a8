//! The shared check report and its JSON encoding.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// One failing sample of one named check, recorded verbatim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Failure {
    pub check: String,
    pub input: String,
    pub left_value: String,
    pub right_value: String,
}

impl Failure {
    pub fn new(
        check: impl Into<String>,
        input: impl Into<String>,
        left_value: impl Into<String>,
        right_value: impl Into<String>,
    ) -> Failure {
        Failure {
            check: check.into(),
            input: input.into(),
            left_value: left_value.into(),
            right_value: right_value.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckSummary {
    pub name: String,
    pub sample_count: usize,
    pub failure_count: usize,
}

/// Result of a sampled or exhaustive check. `failures` is empty exactly when
/// `pass_count == sample_count`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub schema_version: u32,
    pub subject: String,
    pub bounds: BTreeMap<String, u64>,
    pub seed: u64,
    pub sample_count: usize,
    pub pass_count: usize,
    pub checks: Vec<CheckSummary>,
    pub failures: Vec<Failure>,
    pub stability: BTreeMap<String, bool>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, serde_json::Value>,
    /// Only filled in on request, so that reports stay byte-identical across runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            subject: subject.into(),
            bounds: BTreeMap::new(),
            seed: 0,
            sample_count: 0,
            pass_count: 0,
            checks: Vec::new(),
            failures: Vec::new(),
            stability: BTreeMap::new(),
            details: BTreeMap::new(),
            wall_time_ms: None,
        }
    }

    pub fn with_bound(mut self, key: &str, value: usize) -> Report {
        self.bounds.insert(key.to_string(), value as u64);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Report {
        self.seed = seed;
        self
    }

    fn summary(&mut self, check: &str) -> &mut CheckSummary {
        let pos = match self.checks.iter().position(|c| c.name == check) {
            Some(p) => p,
            None => {
                self.checks.push(CheckSummary {
                    name: check.to_string(),
                    sample_count: 0,
                    failure_count: 0,
                });
                self.checks.len() - 1
            }
        };
        &mut self.checks[pos]
    }

    /// Registers a check with no samples yet, so that it shows up even when vacuous.
    pub fn declare(&mut self, check: &str) {
        self.summary(check);
    }

    pub fn pass(&mut self, check: &str) {
        self.summary(check).sample_count += 1;
        self.sample_count += 1;
        self.pass_count += 1;
    }

    pub fn fail(&mut self, failure: Failure) {
        let s = self.summary(&failure.check.clone());
        s.sample_count += 1;
        s.failure_count += 1;
        self.sample_count += 1;
        self.failures.push(failure);
    }

    pub fn record(&mut self, check: &str, outcome: Result<(), Failure>) {
        match outcome {
            Ok(()) => self.pass(check),
            Err(f) => self.fail(f),
        }
    }

    /// Records a pass when `left == right`, otherwise a failure showing both.
    pub fn compare<T: PartialEq + fmt::Display>(&mut self, check: &str, input: &str, left: &T, right: &T) {
        if left == right {
            self.pass(check);
        } else {
            self.fail(Failure::new(check, input, left.to_string(), right.to_string()));
        }
    }

    pub fn set_stability(&mut self, key: &str, stable: bool) {
        self.stability.insert(key.to_string(), stable);
    }

    pub fn detail(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("serializable detail");
        self.details.insert(key.to_string(), v);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failures_of(&self, check: &str) -> impl Iterator<Item = &Failure> {
        let check = check.to_string();
        self.failures.iter().filter(move |f| f.check == check)
    }

    pub fn check_count(&self, check: &str) -> usize {
        self.checks.iter().find(|c| c.name == check).map_or(0, |c| c.sample_count)
    }

    /// Appends the counts and failures of `other`; check names are kept.
    pub fn absorb(&mut self, other: Report) {
        for c in other.checks {
            let s = self.summary(&c.name);
            s.sample_count += c.sample_count;
            s.failure_count += c.failure_count;
        }
        self.sample_count += other.sample_count;
        self.pass_count += other.pass_count;
        self.failures.extend(other.failures);
        self.stability.extend(other.stability);
        self.details.extend(other.details);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {} / {} passed{}",
            self.subject,
            self.pass_count,
            self.sample_count,
            if self.passed() { "" } else { " (FAILED)" }
        )?;
        for c in &self.checks {
            writeln!(f, "  {:<28} {:>6} samples, {} failures", c.name, c.sample_count, c.failure_count)?;
        }
        for (k, v) in &self.stability {
            writeln!(f, "  stability {k}: {}", if *v { "stable" } else { "UNSTABLE" })?;
        }
        for fail in self.failures.iter().take(5) {
            writeln!(f, "  ! {} on {}: {} vs {}", fail.check, fail.input, fail.left_value, fail.right_value)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_stay_consistent() {
        let mut r = Report::new("x");
        r.pass("a");
        r.fail(Failure::new("b", "i", "l", "r"));
        r.pass("b");
        assert_eq!(r.sample_count, 3);
        assert_eq!(r.pass_count, 2);
        assert_eq!(r.failures.len(), r.sample_count - r.pass_count);
        assert_eq!(r.check_count("b"), 2);
        assert!(!r.passed());
    }

    #[test]
    fn json_round_trip() {
        let mut r = Report::new("x").with_bound("size", 5).with_seed(7);
        r.pass("a");
        r.set_stability("t2", true);
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_json().contains("\"schemaVersion\": 1"));
        assert!(!r.to_json().contains("wallTimeMs"));
    }
}
