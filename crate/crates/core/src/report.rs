//! Verdicts with finite witness lists.
//!
//! Every exhaustive checker returns a [`CheckReport`]: a pass/fail verdict
//! plus one [`Witness`] per violated identity instance. Witnesses are sorted
//! by (identity, index tuple), so reports are identical whether a sweep ran
//! sequentially or in parallel. Truncation to a witness cap happens only at
//! rendering time; the in-memory report always knows every violation.

use serde::Serialize;

use crate::exactlin::Scalar;

/// Default number of witnesses rendered per report.
pub const DEFAULT_WITNESS_CAP: usize = 16;

/// One violated identity instance: which identity, at which basis index
/// tuple, with the exact left- and right-hand side values.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Witness {
    pub identity: String,
    pub indices: Vec<usize>,
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

impl Witness {
    pub fn new(
        identity: impl Into<String>,
        indices: Vec<usize>,
        lhs: Vec<Scalar>,
        rhs: Vec<Scalar>,
    ) -> Self {
        Witness {
            identity: identity.into(),
            indices,
            lhs,
            rhs,
        }
    }
}

/// Outcome of one named check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    /// Number of identity instances swept.
    pub checked: u64,
    /// Total violations found (witnesses are never dropped in memory).
    pub violations: u64,
    pub witnesses: Vec<Witness>,
}

impl CheckReport {
    /// Build a report from the raw witness list of a sweep. Sorts the
    /// witnesses so aggregation order cannot leak into the output.
    pub fn new(name: impl Into<String>, checked: u64, mut witnesses: Vec<Witness>) -> Self {
        witnesses.sort();
        CheckReport {
            name: name.into(),
            passed: witnesses.is_empty(),
            violations: witnesses.len() as u64,
            checked,
            witnesses,
        }
    }

    pub fn passing(name: impl Into<String>, checked: u64) -> Self {
        CheckReport::new(name, checked, Vec::new())
    }

    /// Merge sub-reports into one, concatenating witnesses.
    pub fn merge(name: impl Into<String>, parts: Vec<CheckReport>) -> Self {
        let checked = parts.iter().map(|p| p.checked).sum();
        let witnesses = parts.into_iter().flat_map(|p| p.witnesses).collect();
        CheckReport::new(name, checked, witnesses)
    }

    /// Witnesses limited to `cap`, for rendering.
    pub fn capped_witnesses(&self, cap: usize) -> &[Witness] {
        &self.witnesses[..self.witnesses.len().min(cap)]
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}
