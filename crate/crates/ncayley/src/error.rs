//! Error taxonomy shared by the whole crate.
//!
//! Errors fall into two classes: precondition violations (the caller handed
//! us data the operation is not defined on) and internal assertion failures
//! (a mathematical identity the pipeline relies on did not hold, which can
//! only mean a bug). The CLI maps the classes to distinct exit codes.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("element has {found} residues, group has rank {expected}")]
    RankMismatch { expected: usize, found: usize },

    #[error("residue {residue} out of range for factor {factor}")]
    ResidueOutOfRange { residue: u64, factor: u64 },

    #[error("{l} is not a unit modulo {modulus}")]
    NotAUnit { l: u64, modulus: u64 },

    #[error("conductor mismatch: {left} vs {right}")]
    ConductorMismatch { left: u64, right: u64 },

    #[error("group mismatch between operands")]
    GroupMismatch,

    #[error("division by zero in Q(w_{conductor})")]
    DivisionByZero { conductor: u64 },

    #[error("matrix order {n} exceeds the permutation-expansion cap {cap}")]
    FactorialCapExceeded { n: usize, cap: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("precision must be at least 64 bits, got {0}")]
    PrecisionTooLow(u32),

    #[error("root finding did not converge: {0}")]
    RootFindingFailed(String),

    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors that indicate a bug in this crate rather than bad
    /// input. The CLI reports these with a dedicated exit code.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
