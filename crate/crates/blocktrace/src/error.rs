use thiserror::Error;

/// Crate-wide error type. The three variants mirror the CLI exit-code
/// contract: size and usage errors are caller mistakes, domain errors are
/// inputs outside an operation's mathematical hypothesis.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Dimension mismatch or a size cap exceeded.
    #[error("size error: {0}")]
    Size(String),
    /// Input violates a mathematical precondition (e.g. not Hermitian).
    #[error("domain error: {0}")]
    Domain(String),
    /// Invalid argument or malformed input file.
    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
