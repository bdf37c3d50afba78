use std::fmt;

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// What went wrong on a single line of an edge-list file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    MissingHeader,
    BadHeader(String),
    Malformed(String),
    SelfLoop(usize),
    DuplicateEdge(usize, usize),
    OutOfRange { vertex: usize, n: usize },
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::MissingHeader => write!(f, "missing `n=<int>` header"),
            ParseErrorKind::BadHeader(s) => write!(f, "bad header `{s}`, expected `n=<int>`"),
            ParseErrorKind::Malformed(s) => write!(f, "malformed edge line `{s}`"),
            ParseErrorKind::SelfLoop(v) => write!(f, "self-loop at vertex {v}"),
            ParseErrorKind::DuplicateEdge(i, j) => write!(f, "duplicate edge {{{i},{j}}}"),
            ParseErrorKind::OutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range 1..={n}")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("expected exactly one zero eigenvalue, found {0}")]
    ZeroModeCount(usize),

    #[error("negative eigenvalue {0:e} beyond tolerance")]
    NegativeEigenvalue(f64),

    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    pub(crate) fn parse(line: usize, kind: ParseErrorKind) -> Self {
        Error::Parse { line, kind }
    }

    /// True for errors caused by bad input rather than by the numerics.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Numerical(_))
    }
}

pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositive { name, value })
    }
}
