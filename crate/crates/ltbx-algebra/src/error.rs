//! Error type for the symbolic engine. Structural failures here indicate an
//! engine bug or a violated structural identity, never bad user input, so the
//! variants carry enough context to reconstruct what went wrong.

use thiserror::Error;

#[derive(Error, Debug)]
pub enum AlgebraError {
    #[error("constant part of vacuum form for q={q} is {got}, expected {expected}")]
    ConstantTermMismatch {
        q: u16,
        got: String,
        expected: String,
    },

    #[error("expression is not linear in U: monomial {monomial} has U-degree {degree}")]
    NotLinearInU { monomial: String, degree: u32 },

    #[error("differential operator order {got} exceeds the structural bound {bound}")]
    OrderExceeded { got: u32, bound: u32 },

    #[error("top coefficient at ({d},{dbar}) is {got}, expected {expected}")]
    TopCoefficientMismatch {
        d: u16,
        dbar: u16,
        got: String,
        expected: String,
    },

    #[error("q must be at least 1 for this operation (got {0})")]
    QOutOfRange(u16),

    #[error("serialization: {0}")]
    Serialization(String),
}
