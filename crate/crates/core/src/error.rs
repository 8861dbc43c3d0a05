use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid scalar: {0}")]
    InvalidScalar(String),

    #[error("invalid field configuration: {0}")]
    InvalidField(String),

    #[error("parse error in literal {literal:?}: {reason}")]
    Parse { literal: String, reason: String },

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("invalid disk: {0}")]
    InvalidDisk(String),

    #[error("empty disk list")]
    EmptySpectrum,

    #[error("constant polynomial has no disk image")]
    ConstantPolynomial,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("degenerate truncation: {0}")]
    DegenerateTruncation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("point lies inside the spectrum")]
    InsideSpectrum,

    #[error("valuation-only analysis: {0}")]
    ValuationOnly(String),

    #[error("not invertible: {0}")]
    NotInvertible(String),
}

impl Error {
    pub(crate) fn parse(literal: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            literal: literal.to_string(),
            reason: reason.into(),
        }
    }
}
