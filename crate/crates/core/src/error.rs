use thiserror::Error;

/// Errors raised by the algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u32, u32),
    #[error("division by exact zero")]
    DivisionByZero,
    #[error("precision loss: result indistinguishable from zero modulo p^{0}")]
    PrecisionLoss(i64),
    #[error("ring cardinality {0} exceeds the bound {1}")]
    CardinalityBound(u128, u128),
    #[error("not a ring: {0}")]
    NotARing(String),
    #[error("invalid ring spec: {0}")]
    RingSpec(String),
    #[error("cap mismatch: {0}")]
    CapMismatch(String),
    #[error("coefficient {0} is not defined over the base")]
    Coefficient(String),
    #[error("incompatible morphisms: {0}")]
    Incompatible(String),
    #[error("search space {0} exceeds the bound {1}")]
    SearchBound(u128, u128),
    #[error("characteristic: {0}")]
    Characteristic(String),
    #[error("length bound: {0}")]
    Length(String),
    #[error("certification failed at the truncation cap: {0}")]
    Certification(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
