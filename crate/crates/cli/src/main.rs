//! `orthopoly` command-line front end.
//!
//! Exit status: 0 on success, 1 when a numerical step fails or a `check`
//! residual exceeds the tolerance, 2 for an invalid invocation.

mod commands;
mod source;
mod emit;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Default tolerance when neither `--tol` nor `ORTHOPOLY_TOL` is given.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Parser, Debug)]
#[command(name = "orthopoly", version, about = "Orthogonal polynomial tables, Gauss rules, identity checks and moment diagnostics")]
pub struct Cli {
    /// Tolerance for residuals and cross-checks.
    #[arg(long, global = true, env = "ORTHOPOLY_TOL", allow_hyphen_values = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the document here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Where the polynomial system comes from. Exactly one source is allowed.
#[derive(Args, Debug, Clone, Default)]
pub struct SourceArgs {
    /// Named family (jacobi, laguerre, hermite, gegenbauer, legendre,
    /// chebyshev_t, chebyshev_u, krawtchouk, hahn, meixner, charlier).
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    /// Charlier parameter.
    #[arg(long)]
    pub a: Option<f64>,
    /// Krawtchouk parameter.
    #[arg(long)]
    pub p: Option<f64>,
    /// Meixner parameter.
    #[arg(long)]
    pub c: Option<f64>,
    /// Number of lattice points minus one for Krawtchouk and Hahn.
    #[arg(long)]
    pub big_n: Option<usize>,
    /// Recurrence table file (`schema: 1`).
    #[arg(long)]
    pub recurrence: Option<PathBuf>,
    /// Total mass for a recurrence file.
    #[arg(long)]
    pub mu0: Option<f64>,
    /// Measure file (`schema: 1`).
    #[arg(long)]
    pub measure: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Recurrence,
    Series,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Standard,
    Monic,
    Orthonormal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Identity {
    Ode,
    Shift,
    Cd,
    Quadratic,
    Orthogonality,
    Limit,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Values p_n(x) for a degree range on a grid.
    Tabulate {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = 0)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        /// `a:b:steps` (steps intervals) or a comma list.
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long, value_enum, default_value_t = Method::Recurrence)]
        method: Method,
        /// Also evaluate the other route and fail when they differ beyond the tolerance.
        #[arg(long)]
        verify: bool,
    },
    /// Gauss rule with n nodes.
    Quadrature {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        n: usize,
    },
    /// Zeros of p_n.
    Zeros {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        n: usize,
    },
    /// Recurrence coefficients as a `schema: 1` table.
    Recurrence {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = FormArg::Standard)]
        form: FormArg,
    },
    /// Residual of an identity; exits 1 when it exceeds the tolerance.
    Check {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_enum)]
        identity: Identity,
        #[arg(long)]
        n: usize,
        /// Sample points (comma list); defaults depend on the support.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x: Option<Vec<f64>>,
    },
    /// Moment-problem diagnostics; verdicts are encoded in the document.
    Diagnose {
        #[command(flatten)]
        source: SourceArgs,
        /// Carleman sums.
        #[arg(long)]
        carleman: bool,
        #[arg(long, default_value_t = 1000)]
        carleman_n: usize,
        /// rho(z) at `re` or `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        rho: Option<String>,
        #[arg(long, default_value_t = 320)]
        rho_n: usize,
        /// Zeros up to this degree and the true interval.
        #[arg(long)]
        true_interval: Option<usize>,
        /// Support classification from the first n coefficients.
        #[arg(long)]
        support: Option<usize>,
        /// Continued-fraction convergence at `re` or `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        markov: Option<String>,
    },
}

/// Failure classes mapped to exit statuses.
#[derive(Debug)]
pub enum CliError {
    /// Invalid invocation; the message names the field.
    Config(String),
    /// A numerical step failed; the message names the operation.
    Numeric(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "invalid configuration: {m}"),
            CliError::Numeric(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => {
            if let Err(e) = emit::write(&cli, &outcome.document) {
                eprintln!("{e}");
                return ExitCode::from(e.code());
            }
            if let Some(msg) = outcome.failure {
                eprintln!("{msg}");
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.code())
        }
    }
}
