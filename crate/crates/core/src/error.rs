use thiserror::Error;

use crate::algebra::CaseTag;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenusError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("rank mismatch: form has rank {expected}, class has length {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("integer overflow in lattice arithmetic")]
    Overflow,

    #[error("class has negative square {0}")]
    NegativeSquare(i64),

    #[error("class is zero")]
    ZeroClass,

    #[error("{0} is not an adjunction class")]
    NotAdjunctionClass(String),

    #[error("operation not available for {0}")]
    UnsupportedCase(CaseTag),

    #[error("omega is not contained in the (-E8) summand")]
    OutsideE8,

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, GenusError>;
