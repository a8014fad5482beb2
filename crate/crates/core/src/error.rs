use thiserror::Error;

use crate::field::GaussianRational;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("eigenvalue outside the working field: {0}")]
    EigenvalueOutsideField(String),

    #[error("square root of {0} is not in the working field")]
    SqrtNotInField(GaussianRational),

    #[error("result requires a radical extension: {0}")]
    RequiresRadicalExtension(String),

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix is not skew-symmetric")]
    NotSkew,

    #[error("matrix is not Hermitian")]
    NotHermitian,

    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is singular")]
    Singular,

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid summand descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("pencil block multiset has no table cover: {0}")]
    MalformedPencil(String),

    #[error("pencil is not compatible with the pair structure: {0}")]
    PencilNotCompatible(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("pairs are not equivalent: {0}")]
    NotEquivalent(String),

    #[error("internal error: {0}")]
    Internal(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    Parse,
    Field,
    Structure,
    NotEquivalent,
    Internal,
}

impl ErrorCategory {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorCategory::Parse => 2,
            ErrorCategory::Field => 3,
            ErrorCategory::Structure => 4,
            ErrorCategory::NotEquivalent => 5,
            ErrorCategory::Internal => 1,
        }
    }
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        use Error::*;
        match self {
            Parse(_) => ErrorCategory::Parse,
            EigenvalueOutsideField(_) | SqrtNotInField(_) | RequiresRadicalExtension(_) => ErrorCategory::Field,
            NotSymmetric | NotSkew | NotHermitian | NotSquare(..) | ShapeMismatch(_) | Singular
            | DivisionByZero | InvalidDescriptor(_) | PencilNotCompatible(_) | Precondition(_) => {
                ErrorCategory::Structure
            }
            NotEquivalent(_) => ErrorCategory::NotEquivalent,
            MalformedPencil(_) | Internal(_) => ErrorCategory::Internal,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
