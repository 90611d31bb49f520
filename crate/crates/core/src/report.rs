//! Uniform record for every checked inequality or identity.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Both sides computed exactly (up to floating point).
    Exact,
    /// The small side is a proven lower bound on the quantity it stands for.
    Certified,
    /// Computed from the best witness found; a lower estimate of a supremum.
    EstimatedLowerCertificate,
    /// Informational only; never used to pass or fail a run.
    Diagnostic,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub claim: String,
    /// The side the claim bounds against (right-hand side of `value ≥ constant`).
    pub constant: f64,
    pub value: f64,
    pub mode: Mode,
    /// `value − constant` for inequalities, `−|value − constant|` for identities.
    pub slack: f64,
    pub witness_id: Option<usize>,
    pub passed: bool,
}

impl CheckReport {
    /// Records `value ≥ constant`, passing when `slack ≥ −tol`.
    pub fn at_least(
        claim: impl Into<String>,
        value: f64,
        constant: f64,
        mode: Mode,
        tol: f64,
    ) -> Self {
        let slack = value - constant;
        CheckReport {
            claim: claim.into(),
            constant,
            value,
            mode,
            slack,
            witness_id: None,
            passed: slack >= -tol,
        }
    }

    /// Records `value ≈ constant` within `tol`.
    pub fn equal(claim: impl Into<String>, value: f64, constant: f64, tol: f64) -> Self {
        let slack = -(value - constant).abs();
        CheckReport {
            claim: claim.into(),
            constant,
            value,
            mode: Mode::Exact,
            slack,
            witness_id: None,
            passed: slack >= -tol,
        }
    }

    pub fn with_witness(mut self, id: Option<usize>) -> Self {
        self.witness_id = id;
        self
    }

    /// Diagnostics never fail.
    pub fn counts(&self) -> bool {
        self.mode != Mode::Diagnostic
    }
}

/// True when every non-diagnostic report passed.
pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().filter(|r| r.counts()).all(|r| r.passed)
}
