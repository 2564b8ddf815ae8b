//! Command-line front end: argument parsing, canonical run configuration,
//! dispatch to the subcommands, and exit codes.

mod commands;
mod region;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bodies::BodySpec;
use crate::error::Error;
use crate::functionals::PExponent;

pub use region::parse_region;

pub const SCHEMA: &str = "lp-steiner/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "lp-steiner", version, about = "Steiner formulas for L_p affine surface areas")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Evaluate as_p / as_{p,s}, or as_{-n} with --neg-n.
    Asp(CommonArgs),
    /// Build the coefficient grid and write it as JSON or CSV.
    Expand(CommonArgs),
    /// Compare the truncated series with direct evaluation on K + tB.
    Verify(CommonArgs),
    /// Local measures over a region, with a local series check.
    Measures(CommonArgs),
    /// Polytope Steiner formula.
    Polytope(CommonArgs),
    /// Weighted Rényi divergence and Hellinger integral.
    Renyi(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Asp,
    Expand,
    Verify,
    Measures,
    Polytope,
    Renyi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
struct CommonArgs {
    /// `ball:R`, `ellipsoid:a,b,..`, `square:h`, `cube:h`, inline JSON or a file.
    #[arg(long)]
    body: String,
    #[arg(long)]
    n: Option<usize>,
    /// Exponent(s); accepts `inf` and `-inf`. Lists only for `verify`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    p: Vec<PExponent>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    s: Vec<f64>,
    #[arg(long, default_value_t = 0)]
    m: u32,
    #[arg(long, default_value_t = 0)]
    k: u32,
    /// Hellinger order for `renyi`; defaults to p/(n+p).
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    t: Vec<f64>,
    #[arg(long = "quad-level", default_value_t = 5)]
    quad_level: u32,
    #[arg(long = "M", default_value_t = crate::steiner::DEFAULT_ORDER)]
    m_max: u32,
    #[arg(long = "Kmax", default_value_t = crate::steiner::DEFAULT_ORDER)]
    k_max: u32,
    /// Pass threshold (`verify`, `measures`) or tail tolerance (other commands).
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long = "allow-near-beta")]
    allow_near_beta: bool,
    /// Evaluate as_{-n} as a node maximum (`asp` only).
    #[arg(long = "neg-n")]
    neg_n: bool,
    /// `full`, `cap:x,y,z:angle`, `sector:start,end`, `halfspace:a,..:b`, `ball:c,..:r`.
    #[arg(long)]
    region: Option<String>,
}

/// Fully resolved run configuration, embedded in every report.
///
/// Thread count and output path are excluded, so reports are identical
/// across both.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    pub body: BodySpec,
    pub n: usize,
    pub p: Vec<PExponent>,
    pub s: Vec<f64>,
    pub m: u32,
    pub k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    pub t: Vec<f64>,
    pub quad_level: u32,
    #[serde(rename = "M")]
    pub m_max: u32,
    #[serde(rename = "Kmax")]
    pub k_max: u32,
    pub tol: f64,
    pub format: Format,
    pub allow_near_beta: bool,
    pub neg_n: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub region: Option<String>,
    #[serde(skip)]
    pub threads: Option<usize>,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::config(format!("config JSON: {e}")))
    }
}

/// An error with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NonConvexDetected { .. }
            | Error::NonFiniteIntegrand { .. }
            | Error::Underflow { .. }
            | Error::NonPositiveMass { .. }
            | Error::Overflow { .. } => EXIT_NUMERIC,
            _ => EXIT_CONFIG,
        };
        let mut message = e.to_string();
        if matches!(e, Error::PEqualsMinusN { .. }) {
            message.push_str(" (`asp --neg-n` evaluates as_{-n})");
        }
        Self { code, message }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::config(format!("I/O: {e}"))
    }
}

/// Parses `args` (program name first), runs the command and writes the
/// report to `stdout`; returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = if code == EXIT_OK {
                write!(stdout, "{e}")
            } else {
                write!(stderr, "{e}")
            };
            return code;
        }
    };
    let (command, args) = match cli.command {
        Sub::Asp(a) => (Command::Asp, a),
        Sub::Expand(a) => (Command::Expand, a),
        Sub::Verify(a) => (Command::Verify, a),
        Sub::Measures(a) => (Command::Measures, a),
        Sub::Polytope(a) => (Command::Polytope, a),
        Sub::Renyi(a) => (Command::Renyi, a),
    };
    let outcome = commands::prepare(command, args).and_then(|(config, body)| {
        let work = || commands::execute(&config, &body);
        let output = match config.threads {
            Some(threads) => rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| CliError::config(format!("thread pool: {e}")))?
                .install(work),
            None => work(),
        }?;
        Ok((config, output))
    });
    match outcome {
        Ok((config, output)) => {
            let mut emit = || -> std::io::Result<()> {
                if let Some(path) = &config.out {
                    std::fs::write(path, &output.file)?;
                    stdout.write_all(output.summary.as_bytes())?;
                } else {
                    stdout.write_all(output.file.as_bytes())?;
                }
                Ok(())
            };
            if let Err(e) = emit() {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_CONFIG;
            }
            if output.failed {
                let _ = writeln!(stderr, "verification failed");
                return EXIT_VERIFY;
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}

/// Entry point for the binary.
pub fn main() -> std::process::ExitCode {
    let code = run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::ExitCode::from(code as u8)
}
