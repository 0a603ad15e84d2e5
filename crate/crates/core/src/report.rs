//! Pass/fail reports for multi-step verifications.

use std::fmt;

/// One named check with an optional witness explaining a failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn pass(name: impl Into<String>) -> CheckResult {
        CheckResult {
            name: name.into(),
            pass: true,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> CheckResult {
        CheckResult {
            name: name.into(),
            pass: false,
            witness: Some(witness.into()),
        }
    }
}

/// A list of checks, printed in the order they were run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn record(&mut self, name: impl Into<String>, pass: bool, witness: impl Into<String>) {
        if pass {
            self.push(CheckResult::pass(name));
        } else {
            self.push(CheckResult::fail(name, witness));
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.pass)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            if c.pass {
                writeln!(f, "PASS {}", c.name)?;
            } else {
                writeln!(f, "FAIL {} -- {}", c.name, c.witness.as_deref().unwrap_or(""))?;
            }
        }
        Ok(())
    }
}
