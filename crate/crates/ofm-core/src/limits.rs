//! Feasibility ceilings for the enumeration-heavy checks.
//!
//! Exhaustiveness is the point of this crate, so nothing is ever sampled:
//! when a carrier outgrows its ceiling the operation fails loudly with a
//! [`FeasibilityError`] instead of checking a subset quietly.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("feasibility exceeded: {what} has {size} elements (bound {bound})")]
pub struct FeasibilityError {
    pub what: String,
    pub size: usize,
    pub bound: usize,
}

impl FeasibilityError {
    pub fn new(what: impl Into<String>, size: usize, bound: usize) -> Self {
        FeasibilityError {
            what: what.into(),
            size,
            bound,
        }
    }
}

/// Tunable ceilings. Environment variables `OFM_MAX_PHI2`, `OFM_MAX_PHI3`
/// and `OFM_MAX_CANDIDATES` override the defaults.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Largest admitted second filter iterate.
    pub max_phi2: usize,
    /// Largest admitted third filter iterate.
    pub max_phi3: usize,
    /// Largest admitted candidate count for the structure-map search.
    pub max_candidates: usize,
    /// Up to this many filters, directed-family checks run over every
    /// nonempty directed subfamily; beyond it they run over all chains.
    pub directed_full_bound: usize,
    /// Safety valve for chain enumeration.
    pub chain_budget: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_phi2: 20_000,
            max_phi3: 20_000,
            max_candidates: 1_000_000,
            directed_full_bound: 12,
            chain_budget: 1_000_000,
        }
    }
}

impl Limits {
    pub fn from_env() -> Self {
        let mut l = Limits::default();
        if let Some(v) = env_usize("OFM_MAX_PHI2") {
            l.max_phi2 = v;
        }
        if let Some(v) = env_usize("OFM_MAX_PHI3") {
            l.max_phi3 = v;
        }
        if let Some(v) = env_usize("OFM_MAX_CANDIDATES") {
            l.max_candidates = v;
        }
        l
    }
}

fn env_usize(key: &str) -> Option<usize> {
    std::env::var(key).ok().and_then(|v| v.parse().ok())
}
