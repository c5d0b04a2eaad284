//! Uniform pass/fail records produced by every verifier.

use alloc::string::String;
use alloc::vec::Vec;
use serde::Serialize;

/// One verified identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub identity_name: String,
    pub lhs: String,
    pub rhs: String,
    pub residual: f64,
    pub pass: bool,
    /// Neutral topic tag used by the command-line reports.
    #[serde(skip)]
    pub anchor: String,
}

impl Check {
    pub fn new(name: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>, residual: f64, pass: bool) -> Self {
        Check {
            identity_name: name.into(),
            lhs: lhs.into(),
            rhs: rhs.into(),
            residual,
            pass,
            anchor: String::new(),
        }
    }

    /// Exact comparison: residual is 0 when equal, 1 otherwise unless given.
    pub fn exact(name: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>, residual: f64) -> Self {
        Check::new(name, lhs, rhs, residual, residual == 0.0)
    }

    pub fn tol(name: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>, residual: f64, tol: f64) -> Self {
        Check::new(name, lhs, rhs, residual, residual.is_finite() && residual <= tol)
    }

    pub fn with_anchor(mut self, anchor: &str) -> Self {
        self.anchor = String::from(anchor);
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Report {
    pub name: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report { name: name.into(), checks: Vec::new() }
    }
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }
    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
    pub fn pass(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
    pub fn max_residual(&self) -> f64 {
        self.checks.iter().fold(0.0, |a, c| if c.residual > a { c.residual } else { a })
    }
    /// Tag every check that has no anchor yet.
    pub fn anchored(mut self, anchor: &str) -> Self {
        for c in &mut self.checks {
            if c.anchor.is_empty() {
                c.anchor = String::from(anchor);
            }
        }
        self
    }
}
