use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular")]
    Singular,

    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("simplex has no interior lattice points")]
    EmptyInterior,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search budget exceeded: {needed} cells requested, budget is {budget}")]
    Budget { needed: String, budget: u64 },

    /// A result contradicted a proven property. Always a bug.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
