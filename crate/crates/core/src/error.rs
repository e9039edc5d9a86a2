use thiserror::Error;

use crate::exactlin::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("map is not invertible: {0}")]
    NotInvertible(String),

    #[error("not an equivalence: {0}")]
    NotEquivalence(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("unsupported base: {0}")]
    UnsupportedBase(String),

    #[error("characteristic {0} is not allowed here")]
    BadCharacteristic(u64),

    #[error("antipode is not invertible")]
    AntipodeNotInvertible,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
