use thiserror::Error;

/// Error categories shared across the crate. The CLI prints these with a
/// one-line `error: <category>: <detail>` prefix and maps them to exit codes.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation
    /// (e.g. a Mellin evaluation with `Re z + a <= 0`).
    #[error("domain: {0}")]
    Domain(String),

    /// The requested computation does not close in the term algebra.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A quadrature detected a non-convergent integral.
    #[error("divergence: {0}")]
    Divergence(String),

    #[error("parse: {0}")]
    Parse(String),

    /// An internal invariant was violated; indicates a bug.
    #[error("internal: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
