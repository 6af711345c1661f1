use std::fmt;

use thiserror::Error;

/// A single violated invariant, located by a dotted field path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub path: String,
    pub message: String,
}

impl Diagnostic {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("site {site} out of range for a {len}-site register")]
    SiteOutOfRange { site: usize, len: usize },

    #[error("invalid hamiltonian parameters: {}", join_diagnostics(.0))]
    InvalidParams(Vec<Diagnostic>),

    /// The request lies outside the regime the model is valid for.
    #[error("regime violation: {0}")]
    Regime(String),

    #[error("resource guard: {0}")]
    ResourceLimit(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown species: {0}")]
    UnknownSpecies(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn join_diagnostics(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
