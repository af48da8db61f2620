//! Library side of the `framescale` command-line tool.
//!
//! Each subcommand is a plain function returning its output text, so the
//! binary only parses arguments, prints and exits.

pub mod commands;
pub mod document;
pub mod generate;
pub mod report;
pub mod tolerance;

use std::io;

use thiserror::Error;

pub use commands::{analyze, analyze_batch, dual, read_document, scale, AnalyzeOptions, ScaleMethod};
pub use document::{FrameDocument, ParseError};
pub use generate::{generate, GenerateKind, GenerateParams};
pub use report::AnalysisReport;
pub use tolerance::{apply_tolerance_overrides, resolve_tolerances};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_SCALABLE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("invalid frame: {0}")]
    Invalid(framescale::Error),
    #[error("{0}")]
    BadParams(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numeric(_) => EXIT_NUMERIC,
            _ => EXIT_INPUT,
        }
    }
}

impl From<framescale::Error> for CliError {
    fn from(e: framescale::Error) -> Self {
        use framescale::Error as E;
        match e {
            E::IterationLimit { .. } | E::Numeric(_) | E::NonSymmetric { .. } | E::NotParsevalScaling { .. } => {
                CliError::Numeric(e.to_string())
            }
            other => CliError::Invalid(other),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
