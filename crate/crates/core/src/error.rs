use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("field mismatch: cannot combine elements of Q(zeta_{left}) and Q(zeta_{right})")]
    FieldMismatch { left: u32, right: u32 },

    #[error("inexact polynomial division: nonzero remainder")]
    InexactDivision,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("duplicate term (x - {shift})^{exponent} in family")]
    DuplicateTerm { shift: String, exponent: u32 },

    #[error("duplicate node {0}")]
    DuplicateNode(String),

    #[error("empty family")]
    EmptyFamily,

    #[error("operation requires rational shifts, found {0}")]
    NonRationalShift(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("enumeration too large: {count} sequences exceed the limit of {limit}")]
    EnumerationTooLarge { count: String, limit: usize },

    #[error("root isolation failed: found {found} roots, expected {expected}")]
    RootIsolation { found: usize, expected: usize },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
