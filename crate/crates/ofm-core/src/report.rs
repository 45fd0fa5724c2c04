//! Report structures shared by the law and theorem checkers.
//!
//! Reports are the machine-readable contract of this crate: one entry per
//! law or claim, `pass`/`fail`/`skipped`, and a witness object on failure.
//! Claims whose preconditions do not hold are reported as skipped with a
//! reason, never silently passed.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One monad-law check.
#[derive(Debug, Clone, Serialize)]
pub struct LawEntry {
    pub law: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regime: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl LawEntry {
    pub fn pass(law: impl Into<String>) -> Self {
        LawEntry {
            law: law.into(),
            status: Status::Pass,
            regime: None,
            reason: None,
            witness: None,
        }
    }

    pub fn fail(law: impl Into<String>, witness: Value) -> Self {
        LawEntry {
            law: law.into(),
            status: Status::Fail,
            regime: None,
            reason: None,
            witness: Some(witness),
        }
    }

    pub fn skipped(law: impl Into<String>, reason: impl Into<String>) -> Self {
        LawEntry {
            law: law.into(),
            status: Status::Skipped,
            regime: None,
            reason: Some(reason.into()),
            witness: None,
        }
    }

    pub fn with_regime(mut self, regime: impl Into<String>) -> Self {
        self.regime = Some(regime.into());
        self
    }
}

/// One claim of a theorem suite.
#[derive(Debug, Clone, Serialize)]
pub struct ClaimEntry {
    pub claim: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regime: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl ClaimEntry {
    pub fn pass(claim: impl Into<String>) -> Self {
        ClaimEntry {
            claim: claim.into(),
            status: Status::Pass,
            regime: None,
            reason: None,
            witness: None,
        }
    }

    pub fn fail(claim: impl Into<String>, witness: Value) -> Self {
        ClaimEntry {
            claim: claim.into(),
            status: Status::Fail,
            regime: None,
            reason: None,
            witness: Some(witness),
        }
    }

    pub fn skipped(claim: impl Into<String>, reason: impl Into<String>) -> Self {
        ClaimEntry {
            claim: claim.into(),
            status: Status::Skipped,
            regime: None,
            reason: Some(reason.into()),
            witness: None,
        }
    }

    pub fn with_regime(mut self, regime: impl Into<String>) -> Self {
        self.regime = Some(regime.into());
        self
    }
}

/// Per-claim outcomes of a theorem check.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub claims: Vec<ClaimEntry>,
}

impl TheoremReport {
    pub fn new(claims: Vec<ClaimEntry>) -> Self {
        TheoremReport { claims }
    }

    /// Every claim passed outright; skipped claims do not count as passes.
    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.status == Status::Pass)
    }

    pub fn no_failures(&self) -> bool {
        self.claims.iter().all(|c| c.status != Status::Fail)
    }

    pub fn get(&self, claim: &str) -> Option<&ClaimEntry> {
        self.claims.iter().find(|c| c.claim == claim)
    }
}
