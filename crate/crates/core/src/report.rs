use std::fmt;

use serde::Serialize;

/// Outcome of one verification suite: how many checks ran and the first
/// counterexample, if any.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: u64,
    pub failure: Option<String>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            checks: 0,
            failure: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    /// Counts one check. Keeps only the first failure message; returns `ok`.
    pub fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) -> bool {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(describe());
        }
        ok
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {} ({} checks)", self.suite, self.checks),
            Some(why) => write!(f, "FAIL {} ({} checks): {}", self.suite, self.checks, why),
        }
    }
}
