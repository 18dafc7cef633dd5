//! Structured pass/fail records. Every verification operation returns a
//! [`VerificationReport`]: a named list of checks, each carrying its exact
//! residual (as a [`Scalar`], serialized canonically) and/or a float view.
//! Pass/fail is always decided on the exact side.

use serde::Serialize;

use crate::scalar::Scalar;

/// One verified claim with its evidence.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Exact residual when the check is an identity (serializes as the
    /// canonical string, `"0"` on pass).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<Scalar>,
    /// Float view of the residual or fitted quantity, when meaningful.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_float: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    /// Check that an exact residual vanishes.
    pub fn exact(name: impl Into<String>, residual: Scalar) -> Check {
        let pass = residual.is_zero();
        let float = residual.to_f64();
        Check {
            name: name.into(),
            pass,
            residual: Some(residual),
            residual_float: Some(float),
            detail: None,
        }
    }

    /// Check with an explicit verdict and description.
    pub fn stated(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            pass,
            residual: None,
            residual_float: None,
            detail: Some(detail.into()),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Check {
        self.detail = Some(detail.into());
        self
    }
}

/// A named bundle of checks; passes iff every check passes.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub subject: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>, checks: Vec<Check>) -> VerificationReport {
        let pass = checks.iter().all(|c| c.pass);
        VerificationReport {
            subject: subject.into(),
            pass,
            checks,
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Names of the failing checks, for compact error messages.
    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect()
    }
}
