use thiserror::Error;

/// Errors raised while building, validating or evaluating fixed-point data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The manifest document does not match the schema.
    #[error("schema error: {0}")]
    Schema(String),

    /// The document decoded but violates a data invariant.
    #[error("validation error: {0}")]
    Validation(String),

    /// A localization sum is not a virtual character.
    #[error("not divisible: {0}")]
    NotDivisible(String),

    /// Generator parameters out of range or of the wrong parity.
    #[error("bad parameters: {0}")]
    BadParams(String),

    /// A surgery spec does not fit the manifold it is applied to.
    #[error("spec error: {0}")]
    Spec(String),

    /// Text is not a character in the canonical grammar.
    #[error("cannot parse character: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
