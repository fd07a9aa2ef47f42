//! Error types shared across the crate.

use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Building a sieve would exceed the configured memory budget.
    #[error("sieve limit {limit} needs ~{required_bytes} bytes, budget is {budget_bytes}")]
    Resource {
        limit: u64,
        required_bytes: u64,
        budget_bytes: u64,
    },

    /// A value fell outside the range a sieve (or other table) can serve.
    #[error("{what}: value {value} exceeds limit {limit}")]
    OutOfRange {
        what: String,
        value: u64,
        limit: u64,
    },

    /// An intermediate of an iterated application left the sieve range.
    /// `step` counts applications from the innermost symbol, 1-based.
    #[error("iterate: step {step} ({symbol}) received {value}, above sieve limit {limit}")]
    IterateOutOfRange {
        step: usize,
        symbol: &'static str,
        value: u64,
        limit: u64,
    },

    /// Exact integer arithmetic left the 64-bit range.
    #[error("integer overflow in {op} at input {input}")]
    Overflow { op: &'static str, input: u64 },

    /// A parameter violated a mathematical precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// A preimage enumeration hit the configured size cap. `partial` holds
    /// the (sorted) elements found before the cap was reached.
    #[error("preimage set for target {target} exceeds cap {cap} ({} partial elements)", partial.len())]
    Truncated {
        target: u64,
        cap: usize,
        partial: Vec<u64>,
    },

    /// A sieve cache file failed validation.
    #[error("invalid sieve cache {path}: {reason}")]
    CacheFormat { path: PathBuf, reason: String },

    #[error("malformed function word {word:?}: {reason}")]
    WordSyntax { word: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Stable machine-readable tag for CLI error reporting.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Resource { .. } => "resource",
            Error::OutOfRange { .. } | Error::IterateOutOfRange { .. } => "out_of_range",
            Error::Overflow { .. } => "overflow",
            Error::Domain(_) => "domain",
            Error::Truncated { .. } => "truncated",
            Error::CacheFormat { .. } => "cache_format",
            Error::WordSyntax { .. } => "word_syntax",
            Error::Io(_) => "io",
        }
    }
}
