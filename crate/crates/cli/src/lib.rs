//! Command-line front end for `matlie`: argument parsing, the space file format and
//! JSON reports. `main.rs` only wires stdin/stdout and the exit code.

pub mod commands;
pub mod format;
pub mod report;

pub use commands::{run, Cli, Command, Outcome, Output, Status};
pub use format::{parse_space_file, write_space_file, FieldSpec, FormatError, Metadata, SpaceFile};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),

    #[error(transparent)]
    Core(#[from] matlie::Error),

    #[error("{0}")]
    Io(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("bad report: {0}")]
    Report(String),
}

impl CliError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        use matlie::Error as E;
        match self {
            CliError::Format(FormatError::Json(_)) => "malformed_json",
            CliError::Format(FormatError::Field { .. }) => "invalid_input",
            CliError::Io(_) => "io_error",
            CliError::Unsupported(_) => "unsupported",
            CliError::Report(_) => "bad_report",
            CliError::Core(e) => match e {
                E::ShapeMismatch { .. } | E::AmbientMismatch { .. } | E::NotSquare { .. } => {
                    "shape_mismatch"
                }
                E::NotClosed { .. } => "not_closed",
                E::NotSubalgebra => "not_subalgebra",
                E::GuardExceeded { .. } => "guard_exceeded",
                E::DescentStalled { .. } => "descent_stalled",
                E::NonCommuting { .. } => "non_commuting",
                E::UnsupportedSpectrum { .. } => "unsupported_spectrum",
                E::NotSemisimple => "not_semisimple",
                E::NotAlternating { .. } => "not_alternating",
                E::ChainNotInvariant { .. } => "chain_not_invariant",
                E::NotReducible { .. } => "not_reducible",
                E::ZeroCertificate => "zero_certificate",
                E::InvalidParameter(_) => "invalid_parameter",
            },
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "error": {
                "code": self.code(),
                "message": self.to_string(),
            }
        })
    }
}
