//! Verification reports: a flat, deterministic list of named checks.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// The check refers to data outside the declared truncation window and
    /// is skipped for soundness; skips never fail a run.
    SkippedBoundary,
    /// Sound-but-incomplete procedures report this when no certificate was
    /// found at the configured bound.
    Unknown,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    /// Stable identifier of the axiom/property checked.
    pub axiom: String,
    pub status: Status,
    /// Localized failure data (block indices, element coefficients, ...).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, axiom: impl Into<String>) {
        self.checks.push(Check {
            axiom: axiom.into(),
            status: Status::Pass,
            witness: None,
        });
    }

    pub fn fail(&mut self, axiom: impl Into<String>, witness: impl Into<String>) {
        self.checks.push(Check {
            axiom: axiom.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
        });
    }

    pub fn skip_boundary(&mut self, axiom: impl Into<String>, witness: impl Into<String>) {
        self.checks.push(Check {
            axiom: axiom.into(),
            status: Status::SkippedBoundary,
            witness: Some(witness.into()),
        });
    }

    pub fn unknown(&mut self, axiom: impl Into<String>, witness: impl Into<String>) {
        self.checks.push(Check {
            axiom: axiom.into(),
            status: Status::Unknown,
            witness: Some(witness.into()),
        });
    }

    /// Record a boolean outcome under one axiom id.
    pub fn record(&mut self, axiom: impl Into<String>, ok: bool, witness: impl Into<String>) {
        if ok {
            self.pass(axiom);
        } else {
            self.fail(axiom, witness);
        }
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    /// Deterministic order: by axiom id, then original insertion order.
    pub fn sorted(mut self) -> Self {
        self.checks.sort_by(|a, b| a.axiom.cmp(&b.axiom));
        self
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn all_passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| matches!(c.status, Status::Pass | Status::SkippedBoundary))
    }

    /// Strict variant: `Unknown` also counts as not-passed.
    pub fn no_failures(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn summary(&self) -> String {
        let pass = self.checks.iter().filter(|c| c.status == Status::Pass).count();
        let fail = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        let skip = self
            .checks
            .iter()
            .filter(|c| c.status == Status::SkippedBoundary)
            .count();
        let unknown = self.checks.iter().filter(|c| c.status == Status::Unknown).count();
        format!("{pass} passed, {fail} failed, {skip} boundary-skipped, {unknown} unknown")
    }
}
