//! Command-line front end for `sp4quat`.
//!
//! Input is a JSON [`MatrixDocument`] or an array of them; output mirrors the
//! input shape, one report per document, in input order. Exit codes: 0
//! success, 1 usage or parse error, 2 structural precondition failed, 3
//! numeric guard tripped or a residual above `--tol`.

pub mod commands;
pub mod document;
mod text;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;
use sp4quat::testkit::GeneratorConfig;
use sp4quat::{Error, Mat4, DEFAULT_TOL};

pub use document::{parse_input, Input, InputError, MatrixDocument};

use commands::Outcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Success = 0,
    Usage = 1,
    Structural = 2,
    Numeric = 3,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }

    fn of_error(err: &Error) -> Self {
        if err.is_structural() {
            Status::Structural
        } else {
            Status::Numeric
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "sp4quat",
    version,
    about = "Quaternion factorizations of 4x4 real symplectic matrices"
)]
pub struct Cli {
    /// Relative tolerance for structural checks and residuals.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL, value_parser = positive_real)]
    pub tol: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// JSON input file; `-` or omitted reads stdin.
    pub input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Quaternion tensor coefficients (a, p, q, r, s, t).
    Repr(InputArgs),
    /// Polar decomposition X = U H and the quaternion parameters.
    Polar(InputArgs),
    /// Characteristic polynomial from the quaternion parameters.
    Charpoly(InputArgs),
    /// Symplectic, Hamiltonian, symmetric symplectic and positive definite tests.
    Check(InputArgs),
    /// All symmetric symplectic square roots of X^T X with non-zero trace.
    Sqrts {
        #[command(flatten)]
        input: InputArgs,
        /// The input already is the Gram matrix X^T X.
        #[arg(long)]
        gram: bool,
    },
    /// Euler-Cartan factorization X = U1 D U2.
    Cartan(InputArgs),
    /// Seeded batch of random symplectic matrices.
    Generate {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        /// Upper bound on the eigenvalues of log(P) for the positive factor P.
        #[arg(long, default_value_t = 1.0, value_parser = non_negative_real)]
        spread: f64,
    },
}

impl Command {
    pub fn input_path(&self) -> Option<Option<&PathBuf>> {
        match self {
            Command::Repr(a)
            | Command::Polar(a)
            | Command::Charpoly(a)
            | Command::Check(a)
            | Command::Cartan(a)
            | Command::Sqrts { input: a, .. } => Some(a.input.as_ref()),
            Command::Generate { .. } => None,
        }
    }
}

fn positive_real(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(format!("expected a positive finite number, got `{s}`")),
    }
}

fn non_negative_real(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 => Ok(v),
        _ => Err(format!("expected a non-negative finite number, got `{s}`")),
    }
}

/// Everything an invocation produces.
#[derive(Debug, Clone, PartialEq)]
pub struct Run {
    pub stdout: String,
    pub stderr: String,
    pub status: Status,
}

impl Run {
    fn usage(message: String) -> Self {
        Run {
            stdout: String::new(),
            stderr: message,
            status: Status::Usage,
        }
    }
}

#[derive(Serialize)]
struct ErrorBody {
    kind: &'static str,
    message: String,
}

#[derive(Serialize)]
#[serde(untagged)]
enum Entry<T> {
    Report {
        #[serde(skip_serializing_if = "Option::is_none")]
        label: Option<String>,
        #[serde(flatten)]
        report: T,
    },
    Failure {
        #[serde(skip_serializing_if = "Option::is_none")]
        label: Option<String>,
        error: ErrorBody,
    },
}

struct Processed {
    value: Value,
    status: Status,
    diagnostic: Option<String>,
}

fn process<T, F>(index: usize, doc: &MatrixDocument, f: &F) -> Processed
where
    T: Serialize,
    F: Fn(&Mat4) -> Result<Outcome<T>, Error>,
{
    let label = doc.label.clone();
    let (entry, status, diagnostic) = match f(&doc.mat4()) {
        Ok(out) => {
            let note =
                (out.status != Status::Success).then(|| "residual above tolerance".to_string());
            (
                Entry::Report {
                    label,
                    report: out.report,
                },
                out.status,
                note,
            )
        }
        Err(err) => {
            let status = Status::of_error(&err);
            let kind = if status == Status::Structural {
                "structural"
            } else {
                "numeric"
            };
            let body = ErrorBody {
                kind,
                message: err.to_string(),
            };
            (
                Entry::Failure { label, error: body },
                status,
                Some(err.to_string()),
            )
        }
    };
    let diagnostic = diagnostic.map(|msg| match &doc.label {
        Some(l) => format!("document {index} ({l}): {msg}"),
        None => format!("document {index}: {msg}"),
    });
    Processed {
        value: serde_json::to_value(&entry).expect("reports serialize"),
        status,
        diagnostic,
    }
}

fn run_batch<T, F>(input: &Input, f: F) -> (Value, Status, Vec<String>)
where
    T: Serialize,
    F: Fn(&Mat4) -> Result<Outcome<T>, Error> + Sync,
{
    let processed: Vec<Processed> = input
        .documents()
        .par_iter()
        .enumerate()
        .map(|(i, doc)| process(i, doc, &f))
        .collect();
    let status = processed
        .iter()
        .map(|p| p.status)
        .max()
        .unwrap_or(Status::Success);
    let diagnostics = processed
        .iter()
        .filter_map(|p| p.diagnostic.clone())
        .collect();
    let mut values: Vec<Value> = processed.into_iter().map(|p| p.value).collect();
    let value = if input.is_batch() {
        Value::Array(values)
    } else {
        values.pop().unwrap_or(Value::Null)
    };
    (value, status, diagnostics)
}

pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("value serializes");
            s.push('\n');
            s
        }
        Format::Text => text::render(value),
    }
}

/// Runs `cli` on already-read input text (ignored by `generate`).
pub fn execute(cli: &Cli, input_text: &str) -> Run {
    let tol = cli.tol;
    let (value, status, diagnostics) = if let Command::Generate {
        seed,
        count,
        spread,
    } = cli.command
    {
        let config = GeneratorConfig {
            seed,
            spread,
            count: count as usize,
        };
        let docs = commands::generate(&config);
        let value = serde_json::to_value(&docs).expect("documents serialize");
        (value, Status::Success, Vec::new())
    } else {
        let input = match parse_input(input_text) {
            Ok(input) => input,
            Err(err) => return Run::usage(format!("error: {err}\n")),
        };
        match &cli.command {
            Command::Repr(_) => run_batch(&input, |x| Ok(commands::repr(x))),
            Command::Polar(_) => run_batch(&input, |x| commands::polar(x, tol)),
            Command::Charpoly(_) => run_batch(&input, |x| commands::charpoly(x, tol)),
            Command::Check(_) => run_batch(&input, |x| Ok(commands::check(x, tol))),
            Command::Sqrts { gram, .. } => run_batch(&input, |x| commands::sqrts(x, tol, *gram)),
            Command::Cartan(_) => run_batch(&input, |x| commands::cartan(x, tol)),
            Command::Generate { .. } => unreachable!(),
        }
    };
    let stderr = diagnostics
        .iter()
        .map(|d| format!("warning: {d}\n"))
        .collect();
    Run {
        stdout: render(&value, cli.format),
        stderr,
        status,
    }
}
