//! Command-line front end.
//!
//! [`run`] parses arguments, executes one command and returns the process
//! exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | `verify` found a violation |
//! | 2 | unreadable input: bad arguments, JSON, or rational strings |
//! | 3 | the model or prior fails validation |
//! | 4 | empty posterior set or empty result |
//! | 5 | enumeration limit exceeded |
//! | 6 | bound formula denominator is zero |
//! | 7 | `refine` on a correlated model |

mod commands;
pub mod document;
mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::sequence::CombinationSemantics;

pub use document::{parse_prior, ModelDocument};

/// A failure with its exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn parse(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }

    pub fn validation(message: impl Into<String>) -> Self {
        CliError { code: 3, message: message.into() }
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::EmptyPosteriorSet
        | Error::EmptyResult
        | Error::UndefinedCombination
        | Error::ImpossibleSequence
        | Error::ConditioningOnNull { .. } => 4,
        Error::ExplosionGuard { .. } => 5,
        Error::ZeroDenominator { .. } => 6,
        Error::CorrelatedSpace => 7,
        _ => 3,
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError { code: exit_code(&e), message: e.to_string() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Semantics {
    /// One likelihood mapping governs the whole sequence.
    Fixed,
    /// The mapping may change from one observation to the next.
    PerObservation,
}

impl From<Semantics> for CombinationSemantics {
    fn from(s: Semantics) -> Self {
        match s {
            Semantics::Fixed => CombinationSemantics::FixedMapping,
            Semantics::PerObservation => CombinationSemantics::PerObservation,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "uncertain-evidence", version, about = "Exact weights of evidence and posterior bounds")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for the randomized checks in `verify`.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weight of evidence tables; upper and lower weights for several mappings.
    Weights {
        /// Model file (JSON).
        model: PathBuf,
    },
    /// Posterior set after one or more observations.
    Update {
        /// Model file (JSON).
        model: PathBuf,
        /// `id=p/q,...` or a JSON file; defaults to the model's prior.
        #[arg(long)]
        prior: Option<String>,
        /// Comma-separated observation ids, in order.
        #[arg(long, value_delimiter = ',', required = true)]
        obs: Vec<String>,
        /// How mappings are chosen across the sequence.
        #[arg(long, value_enum, default_value_t = Semantics::Fixed)]
        semantics: Semantics,
    },
    /// Enumerated posterior bounds against the closed-form bounds.
    Bounds {
        /// Model file (JSON).
        model: PathBuf,
        /// `id=p/q,...` or a JSON file; defaults to the model's prior.
        #[arg(long)]
        prior: Option<String>,
        /// Observations to report; all of them by default.
        #[arg(long, value_delimiter = ',')]
        obs: Vec<String>,
    },
    /// Whether the mapping set is a product of per-hypothesis sets.
    CheckUncorrelated {
        /// Model file (JSON).
        model: PathBuf,
    },
    /// Writes the refined single-mapping model of an uncorrelated model.
    Refine {
        /// Model file (JSON).
        model: PathBuf,
        /// Write the document here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Combined weight of a sequence of observations.
    Combine {
        /// Model file (JSON).
        model: PathBuf,
        /// Comma-separated observation ids, in order.
        #[arg(long, value_delimiter = ',', required = true)]
        obs: Vec<String>,
        /// How mappings are chosen across the sequence.
        #[arg(long, value_enum, default_value_t = Semantics::Fixed)]
        semantics: Semantics,
    },
    /// Re-derives results by brute force and reports any disagreement.
    Verify {
        /// Model file (JSON).
        model: PathBuf,
        /// `id=p/q,...` or a JSON file; defaults to the model's prior, then uniform.
        #[arg(long)]
        prior: Option<String>,
        /// Random priors per mapping for the conditioning check.
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Random interior extensions per refined bound.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

/// What a command produced: text and JSON renderings, and the exit code.
pub(crate) struct Outcome {
    pub text: String,
    pub json: serde_json::Value,
    pub code: i32,
}

/// Runs the command line given by `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    match commands::execute(&cli) {
        Ok(outcome) => {
            let body = match cli.format {
                Format::Text => outcome.text,
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&outcome.json).expect("json values serialize");
                    s.push('\n');
                    s
                }
            };
            if out.write_all(body.as_bytes()).is_err() {
                return 2;
            }
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}
