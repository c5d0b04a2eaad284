//! Run configuration: defaults, a `key=value` file named by `RIAHO_CONFIG`, then flags.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use riaho_core::scalar::Q;
use riaho_core::suites::SuiteConfig;
use serde::Serialize;

use crate::parse::{parse_f64, parse_rational};

pub const CONFIG_ENV: &str = "RIAHO_CONFIG";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub suite: SuiteConfig,
    pub out: PathBuf,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { suite: SuiteConfig::default(), out: PathBuf::from("."), format: Format::Csv }
    }
}

/// Keys accepted in the config file and by `--set`.
pub const KEYS: [&str; 12] = ["m", "omega", "hbar", "n", "tol_fock", "tol_operator", "tol_quad", "tol_traj", "tol_closure", "tol_map", "out", "format"];

impl RunConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        let s = &mut self.suite;
        let rational = |v: &str| -> Result<Q> { parse_rational(v) };
        match key.trim() {
            "m" => s.m = rational(v)?,
            "omega" => s.omega = rational(v)?,
            "hbar" => s.hbar = rational(v)?,
            "n" | "N" => s.cutoff = v.parse().map_err(|_| anyhow!("N must be a non-negative integer, got '{}'", v))?,
            "tol_fock" => s.fock_tol = parse_f64(v)?,
            "tol_operator" => s.operator_tol = parse_f64(v)?,
            "tol_quad" => s.quad_tol = parse_f64(v)?,
            "tol_traj" => s.traj_tol = parse_f64(v)?,
            "tol_closure" => s.closure_tol = parse_f64(v)?,
            "tol_map" => s.map_tol = parse_f64(v)?,
            "out" => self.out = PathBuf::from(v),
            "format" => {
                self.format = match v {
                    "csv" => Format::Csv,
                    "json" => Format::Json,
                    _ => bail!("format must be csv or json, got '{}'", v),
                }
            }
            other => bail!("unknown config key '{}'; expected one of {}", other, KEYS.join(", ")),
        }
        Ok(())
    }

    /// Applies `key=value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str, origin: &str) -> Result<()> {
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| anyhow!("{}:{}: expected key=value", origin, i + 1))?;
            self.set(k, v).with_context(|| format!("{}:{}", origin, i + 1))?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        self.apply_text(&text, &path.display().to_string())
    }

    pub fn validate(&self) -> Result<()> {
        self.suite.validate().map_err(|e| anyhow!("{}", e))
    }

    /// Defaults, then the file named by `env_path`, then `overrides` in order.
    pub fn load(env_path: Option<&Path>, overrides: &[(String, String)]) -> Result<Self> {
        let mut c = RunConfig::default();
        if let Some(p) = env_path {
            c.apply_file(p)?;
        }
        for (k, v) in overrides {
            c.set(k, v)?;
        }
        c.validate()?;
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layering() {
        let mut c = RunConfig::default();
        c.apply_text("# units\nm = 3/2\nN=6\nformat=json # trailing\n\n", "t").unwrap();
        assert_eq!(c.suite.m, Q::new(3, 2));
        assert_eq!(c.suite.cutoff, 6);
        assert_eq!(c.format, Format::Json);
        assert!(c.validate().is_ok());
        c.set("n", "3").unwrap();
        assert!(c.validate().is_err());
        assert!(c.apply_text("bogus=1", "t").is_err());
        assert!(c.apply_text("m", "t").is_err());
        let mut c = RunConfig::default();
        c.set("tol_quad", "-1").unwrap();
        assert!(c.validate().is_err());
    }
}
