use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    /// What was covered on success; the counterexample on failure.
    pub detail: String,
}

/// Outcome of a batch of checks on one instance. Printed one line per
/// check as `check=<name> status=<pass|fail> detail=<...>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub instance: String,
    pub checks: Vec<Check>,
    pub trials: usize,
    pub seed: u64,
    /// Filled in by callers that can read a clock.
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    pub fn new(instance: &str, trials: usize, seed: u64) -> Self {
        VerificationReport { instance: instance.to_string(), checks: Vec::new(), trials, seed, elapsed_ms: None }
    }

    pub fn pass(&mut self, name: &str, detail: impl Into<String>) {
        self.checks.push(Check { name: name.to_string(), status: CheckStatus::Pass, detail: detail.into() });
    }

    pub fn fail(&mut self, name: &str, detail: impl Into<String>) {
        self.checks.push(Check { name: name.to_string(), status: CheckStatus::Fail, detail: detail.into() });
    }

    /// Record `name` as failed with the counterexample, or passed with `covered`.
    pub fn outcome(&mut self, name: &str, counterexample: Option<String>, covered: impl Into<String>) {
        match counterexample {
            Some(c) => self.fail(name, c),
            None => self.pass(name, covered),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    /// Append another report's checks.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn summary(&self) -> String {
        let failed = self.failures().count();
        let mut s = alloc::format!(
            "instance={} trials={} seed={} checks={} failed={}",
            self.instance,
            self.trials,
            self.seed,
            self.checks.len(),
            failed
        );
        if let Some(ms) = self.elapsed_ms {
            s.push_str(&alloc::format!(" elapsed_ms={ms}"));
        }
        s
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "check={} status={} detail={}", c.name, c.status.as_str(), c.detail)?;
        }
        Ok(())
    }
}
