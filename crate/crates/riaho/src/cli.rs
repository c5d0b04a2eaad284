//! Argument definitions and dispatch.

use std::path::PathBuf;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands;
use crate::config::{Format, RunConfig, CONFIG_ENV};

#[derive(Debug, Parser)]
#[command(name = "riaho", version, about = "Datasets and verification suites for the rotationally invariant anisotropic oscillator")]
pub struct Cli {
    /// Config file of key=value lines; overrides the file named by RIAHO_CONFIG.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Single config override, e.g. `--set hbar=1/2`; repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

/// Exact coupling `num/den` or a float coupling.
#[derive(Debug, Clone, Args)]
pub struct CouplingArg {
    /// Rational coupling, e.g. `2/3`, `-3`, `0.25`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "g_float")]
    pub g: Option<String>,
    /// Float coupling, for irrational values.
    #[arg(long, allow_hyphen_values = true)]
    pub g_float: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form orbit over one closure period and its sidecar.
    Trajectory {
        #[command(flatten)]
        coupling: CouplingArg,
        #[arg(long)]
        r1: f64,
        #[arg(long)]
        r2: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        gamma1: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        gamma2: f64,
        #[arg(long, default_value_t = 2001)]
        samples: usize,
        /// Time window for open orbits.
        #[arg(long)]
        window: Option<f64>,
        #[arg(long, default_value = "trajectory")]
        name: String,
    },
    /// Lissajous curve of the anisotropic oscillator.
    Lissajous {
        #[arg(long)]
        omega1: String,
        #[arg(long)]
        omega2: String,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        a1: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        b1: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        a2: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        b2: f64,
        #[arg(long, default_value_t = 2001)]
        samples: usize,
        #[arg(long)]
        window: Option<f64>,
        #[arg(long, default_value = "lissajous")]
        name: String,
    },
    /// Energy table with exact values and degeneracy class ids.
    Spectrum {
        #[command(flatten)]
        coupling: CouplingArg,
        /// Largest quantum number per mode; defaults to N.
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long, default_value = "spectrum")]
        name: String,
    },
    /// Degeneracy classes up to an energy, in units of hbar omega.
    Degeneracy {
        #[command(flatten)]
        coupling: CouplingArg,
        #[arg(long)]
        emax: String,
        #[arg(long, allow_hyphen_values = true)]
        emin: Option<String>,
        #[arg(long, default_value = "degeneracy")]
        name: String,
    },
    /// Eigenfunction on a grid.
    Eigenstate {
        #[arg(long)]
        n1: u32,
        #[arg(long)]
        n2: u32,
        /// `lo:hi:count`, used for both axes unless `--grid2` is given.
        #[arg(long, default_value = "-3:3:61", allow_hyphen_values = true)]
        grid: String,
        #[arg(long, allow_hyphen_values = true)]
        grid2: Option<String>,
        #[arg(long, default_value = "eigenstate")]
        name: String,
    },
    /// Coherent state, its evolved and rotated images, and the relation residuals.
    Coherent {
        #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
        beta: String,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        gamma: f64,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        g: String,
        #[arg(long, default_value = "-3:3:41", allow_hyphen_values = true)]
        grid: String,
        #[arg(long, default_value = "coherent")]
        name: String,
    },
    /// Coupling and phase from a magnetic field plus harmonic term, or from a rotating frame.
    Landau {
        #[arg(long, allow_hyphen_values = true)]
        omega_b: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
        #[arg(long)]
        m: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        omega_cap: Option<String>,
        /// Use the float map even for rational inputs.
        #[arg(long)]
        float: bool,
        #[arg(long, default_value = "landau")]
        name: String,
    },
    /// Run a verification suite and write its report.
    Verify {
        #[arg(value_enum)]
        suite: SuiteName,
        /// Record wall time per suite in the report.
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    Algebra,
    Classical,
    Fock,
    Bridge,
    Aniso,
    Landau,
    All,
}

impl SuiteName {
    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteName::Algebra => "algebra",
            SuiteName::Classical => "classical",
            SuiteName::Fock => "fock",
            SuiteName::Bridge => "bridge",
            SuiteName::Aniso => "aniso",
            SuiteName::Landau => "landau",
            SuiteName::All => "all",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }
}

/// Resolves the run configuration: defaults, config file, then flags.
pub fn resolve_config(cli: &Cli, env_file: Option<PathBuf>) -> Result<RunConfig> {
    let file = cli.config.clone().or(env_file);
    let mut overrides = Vec::new();
    for s in &cli.set {
        let (k, v) = s.split_once('=').ok_or_else(|| anyhow!("--set expects KEY=VALUE, got '{}'", s))?;
        overrides.push((k.to_string(), v.to_string()));
    }
    if let Some(o) = &cli.out {
        overrides.push(("out".into(), o.display().to_string()));
    }
    if let Some(f) = cli.format {
        overrides.push(("format".into(), if f == Format::Csv { "csv" } else { "json" }.into()));
    }
    RunConfig::load(file.as_deref(), &overrides)
}

pub fn run(cli: Cli, env_file: Option<PathBuf>) -> Result<Outcome> {
    let cfg = resolve_config(&cli, env_file)?;
    match cli.command {
        Command::Trajectory { coupling, r1, r2, gamma1, gamma2, samples, window, name } => {
            commands::trajectory(&cfg, &coupling, r1, r2, gamma1, gamma2, samples, window, &name)
        }
        Command::Lissajous { omega1, omega2, a1, b1, a2, b2, samples, window, name } => {
            commands::lissajous(&cfg, &omega1, &omega2, [a1, b1, a2, b2], samples, window, &name)
        }
        Command::Spectrum { coupling, nmax, name } => commands::spectrum(&cfg, &coupling, nmax, &name),
        Command::Degeneracy { coupling, emax, emin, name } => commands::degeneracy(&cfg, &coupling, &emax, emin.as_deref(), &name),
        Command::Eigenstate { n1, n2, grid, grid2, name } => commands::eigenstate(&cfg, n1, n2, &grid, grid2.as_deref(), &name),
        Command::Coherent { alpha, beta, t, gamma, g, grid, name } => commands::coherent(&cfg, &alpha, &beta, t, gamma, &g, &grid, &name),
        Command::Landau { omega_b, lambda, k, m, omega_cap, float, name } => {
            let input = match (omega_b, lambda, k, m, omega_cap) {
                (Some(b), Some(l), None, None, None) => commands::LandauInput::Field { omega_b: b, lambda: l },
                (None, None, Some(k), Some(m), Some(w)) => commands::LandauInput::Frame { k, m, omega_cap: w },
                _ => bail!("landau needs either --omega-b and --lambda, or --k, --m and --omega-cap"),
            };
            commands::landau(&cfg, &input, float, &name)
        }
        Command::Verify { suite, timing } => commands::verify(&cfg, suite.as_str(), timing),
    }
}

/// Parses `args`, runs, prints errors, and returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let env_file = std::env::var_os(CONFIG_ENV).filter(|v| !v.is_empty()).map(PathBuf::from);
    match run(cli, env_file) {
        Ok(o) => o.exit_code(),
        Err(e) => {
            eprintln!("error: {:#}", e);
            2
        }
    }
}
