//! Machine-readable verification reports.

use std::time::Instant;

use anyhow::{anyhow, Result};
use riaho_core::suites::{run_suite, SUITES};
use riaho_core::Report;
use serde::Serialize;

use crate::config::RunConfig;
use crate::output::SCHEMA_VERSION;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub suite: String,
    pub name: String,
    /// Topic tag of the identity being checked.
    pub paper_anchor: String,
    pub status: Status,
    /// `null` when not finite.
    pub residual: Option<f64>,
    pub lhs: String,
    pub rhs: String,
    /// Wall time of the producing suite in seconds; `null` unless timing was requested.
    pub elapsed: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub suite: String,
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

fn records(suite: &str, rep: &Report, elapsed: Option<f64>, out: &mut Vec<CheckRecord>) {
    for (i, c) in rep.checks.iter().enumerate() {
        out.push(CheckRecord {
            check_id: format!("{}.{:04}", suite, i + 1),
            suite: suite.to_string(),
            name: c.identity_name.clone(),
            paper_anchor: c.anchor.clone(),
            status: if c.pass { Status::Pass } else { Status::Fail },
            residual: c.residual.is_finite().then_some(c.residual),
            lhs: c.lhs.clone(),
            rhs: c.rhs.clone(),
            elapsed,
        });
    }
}

/// Runs `suite` (or every suite for `"all"`) with the configured tolerances.
pub fn verify(suite: &str, cfg: &RunConfig, timing: bool) -> Result<VerificationReport> {
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    let mut checks = Vec::new();
    for n in names {
        let start = Instant::now();
        let rep = run_suite(n, &cfg.suite).map_err(|e| anyhow!("suite {}: {}", n, e))?;
        let elapsed = timing.then(|| start.elapsed().as_secs_f64());
        records(n, &rep, elapsed, &mut checks);
    }
    let pass = !checks.is_empty() && checks.iter().all(|c| c.status == Status::Pass);
    Ok(VerificationReport { schema_version: SCHEMA_VERSION, suite: suite.to_string(), checks, pass })
}
