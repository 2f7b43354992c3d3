//! Command-line front end: job parsing, the five commands, and report
//! rendering.
//!
//! Exit codes: 0 success, 1 input error, 2 precondition violation,
//! 3 verification failure.

mod args;
mod emit;
mod report;

pub use args::{Cli, CommandArgs, JobArgs};
pub use emit::{render_rows, TableRow};
pub use report::{
    run_compute, run_reduce, run_sphere, run_table, run_verify, BasisReport, ComputeReport,
    Counterexample, HSource, ReduceReport, SphereReport, TableReport, VerifyReport,
};

use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraDescriptor, AlgebraJson};
use crate::error::GenusError;
use crate::lattice::LatticeClass;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

/// Grid ceiling when `GENUSBOUND_MAX_GRID` is unset.
pub const DEFAULT_MAX_GRID: i64 = 12;
/// Grids above this print a runtime warning.
pub const SLOW_GRID: i64 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Compute,
    Reduce,
    Sphere,
    Verify,
    Table,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
    Markdown,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{message}")]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    pub fn precondition(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_PRECONDITION,
            message: message.into(),
        }
    }
}

impl From<GenusError> for CliError {
    fn from(e: GenusError) -> Self {
        let code = match e {
            GenusError::InvalidParameter(_)
            | GenusError::RankMismatch { .. }
            | GenusError::Overflow
            | GenusError::OutsideE8 => EXIT_INPUT,
            GenusError::NegativeSquare(_)
            | GenusError::ZeroClass
            | GenusError::NotAdjunctionClass(_)
            | GenusError::UnsupportedCase(_) => EXIT_PRECONDITION,
            GenusError::Internal(_) => EXIT_VERIFY,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

/// A coefficient list as typed on the command line: `3,-1,0`, `[3, -1, 0]`
/// or whitespace separated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassInput(pub Vec<i64>);

impl FromStr for ClassInput {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        if body.trim().is_empty() {
            return Err("empty coefficient list".into());
        }
        body.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| format!("coefficient {t:?} is not an integer"))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(ClassInput)
    }
}

impl fmt::Display for ClassInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", LatticeClass::new(self.0.clone()))
    }
}

/// One fully parsed invocation.
#[derive(Debug, Clone)]
pub struct JobSpec {
    pub algebra: AlgebraDescriptor,
    pub command: Command,
    pub class_input: Option<LatticeClass>,
    pub grid: Option<i64>,
    pub bound: Option<i64>,
    pub output_format: OutputFormat,
    pub trace: bool,
    pub max_grid: i64,
}

impl JobSpec {
    pub fn new(algebra: AlgebraDescriptor, command: Command) -> Self {
        JobSpec {
            algebra,
            command,
            class_input: None,
            grid: None,
            bound: None,
            output_format: OutputFormat::Text,
            trace: false,
            max_grid: DEFAULT_MAX_GRID,
        }
    }

    pub fn with_class(mut self, coeffs: &[i64]) -> Self {
        self.class_input = Some(LatticeClass::new(coeffs.to_vec()));
        self
    }

    pub fn with_grid(mut self, grid: i64) -> Self {
        self.grid = Some(grid);
        self
    }

    pub fn with_bound(mut self, bound: i64) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn with_format(mut self, format: OutputFormat) -> Self {
        self.output_format = format;
        self
    }

    pub fn with_trace(mut self, trace: bool) -> Self {
        self.trace = trace;
        self
    }

    pub(crate) fn class(&self) -> Result<&LatticeClass, CliError> {
        let a = self
            .class_input
            .as_ref()
            .ok_or_else(|| CliError::input("this command needs --class"))?;
        self.algebra.form().check_rank(a)?;
        Ok(a)
    }

    pub(crate) fn checked_grid(&self, warnings: &mut Vec<String>) -> Result<i64, CliError> {
        let g = self
            .grid
            .ok_or_else(|| CliError::input("this command needs --grid"))?;
        if g < 0 {
            return Err(CliError::input(format!("grid must be non-negative, got {g}")));
        }
        if g > self.max_grid {
            return Err(CliError::input(format!(
                "grid {g} exceeds GENUSBOUND_MAX_GRID = {}",
                self.max_grid
            )));
        }
        if g > SLOW_GRID {
            warnings.push(format!(
                "grid {g} above {SLOW_GRID}: enumeration may take a long time"
            ));
        }
        Ok(g)
    }
}

/// Reads an algebra from inline JSON (starting with `{`) or from a file path.
pub fn load_algebra(source: &str) -> Result<AlgebraDescriptor, CliError> {
    let text = if source.trim_start().starts_with('{') {
        source.to_string()
    } else {
        std::fs::read_to_string(source)
            .map_err(|e| CliError::input(format!("cannot read {source}: {e}")))?
    };
    let json: AlgebraJson = serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("bad algebra JSON: {e}")))?;
    Ok(AlgebraDescriptor::from_json(&json)?)
}

/// What a command produced: rendered stdout, warnings for stderr, exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub warnings: Vec<String>,
    pub code: i32,
}

/// Runs one job and renders its report.
pub fn run(spec: &JobSpec) -> Result<Outcome, CliError> {
    let mut warnings = Vec::new();
    let fmt = spec.output_format;
    let (stdout, code) = match spec.command {
        Command::Compute => (run_compute(spec)?.render(fmt)?, EXIT_OK),
        Command::Reduce => (run_reduce(spec)?.render(fmt, spec.trace)?, EXIT_OK),
        Command::Sphere => (run_sphere(spec)?.render(fmt)?, EXIT_OK),
        Command::Table => (run_table(spec, &mut warnings)?.render(fmt)?, EXIT_OK),
        Command::Verify => {
            let r = run_verify(spec, &mut warnings)?;
            let code = if r.failed == 0 { EXIT_OK } else { EXIT_VERIFY };
            (r.render(fmt)?, code)
        }
    };
    Ok(Outcome {
        stdout,
        warnings,
        code,
    })
}

pub(crate) fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| CliError {
            code: EXIT_VERIFY,
            message: format!("serialization failed: {e}"),
        })
}
