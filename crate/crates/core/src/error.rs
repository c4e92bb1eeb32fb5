use thiserror::Error;

use crate::algebra::Variety;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid scalar {text:?}: {reason}")]
    Scalar { text: String, reason: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("operation not supported for {variety} algebras: {what}")]
    UnsupportedVariety { variety: Variety, what: String },

    #[error("no functor from {from} to {to}")]
    NotAnArrow { from: Variety, to: Variety },

    #[error("invalid factor system: {0}")]
    InvalidFactorSystem(String),

    #[error("preimage outside the image of sigma: {0}")]
    PreimageOutsideImage(String),

    #[error("section and embedding do not frame the middle algebra")]
    SingularFrame,

    #[error("coefficient algebra is not abelian")]
    NotAbelian,

    #[error("action is incompatible with an abelian coefficient algebra: {0}")]
    IncompatibleAction(String),

    #[error("bilinear map is not a cocycle for the given action")]
    NotACocycle,

    #[error("parse error at {path}: {reason}")]
    Parse { path: String, reason: String },
}

impl Error {
    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }

    pub(crate) fn parse(path: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            reason: reason.into(),
        }
    }
}
