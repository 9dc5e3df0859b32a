use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("color index {color} out of range 1..={max}")]
    InvalidColor { color: usize, max: usize },

    #[error("{what} = {value} out of range {lo}..={hi}")]
    IndexOutOfRange {
        what: &'static str,
        value: usize,
        lo: usize,
        hi: usize,
    },

    #[error("invalid draw history: {0}")]
    InvalidHistory(String),

    #[error(
        "horizon span {span} exceeds the enumeration cap of {cap}; \
         use the dp method (constant schedules) or Monte Carlo instead"
    )]
    CapExceeded { span: usize, cap: usize },

    #[error("need at least {needed} nonzero points in the fit window, found {found}")]
    InsufficientData { needed: usize, found: usize },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("value {value} out of range: {reason}")]
    Range { value: f64, reason: String },

    #[error("config file not found: {}", path.display())]
    MissingFile { path: PathBuf },

    #[error("malformed config at line {line}: {message}")]
    MalformedConfig { line: usize, message: String },

    #[error("unknown config key `{key}` at line {line}")]
    UnknownKey { key: String, line: usize },

    #[error("cannot write to {}: {source}", path.display())]
    Unwritable { path: PathBuf, source: io::Error },

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },

    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
