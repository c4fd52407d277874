//! Error types shared across the crate.

use thiserror::Error;

/// Violations of index-set or space-tag invariants.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DomainError {
    #[error("monomial z^{z_exp}*w^{w_exp} is outside the Hartogs index set")]
    NotHartogsIndex { z_exp: i64, w_exp: i64 },
    #[error("monomial z^{z_exp}*w^{w_exp} is outside the bidisc index set")]
    NotBidiscIndex { z_exp: i64, w_exp: i64 },
    #[error("elements live in different spaces ({left} vs {right})")]
    SpaceMismatch { left: &'static str, right: &'static str },
    #[error("multiplier polynomial must have nonnegative exponents, got z^{z_exp}*w^{w_exp}")]
    NotPolynomialExponent { z_exp: i64, w_exp: i64 },
    #[error("expected a single monomial, got {terms} terms")]
    NotMonomial { terms: usize },
    #[error("coefficient {value} is not unimodular")]
    NotUnimodular { value: String },
}

/// Parser failures carry the byte offset of the offending input.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

/// Failures of the slice/certificate engine.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("the zero polynomial generates the zero submodule; no slice data")]
    ZeroPolynomial,
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// Failures of operator construction.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum OperatorError {
    #[error(
        "quotient of {poly} is not certified graded up to level {level_max} \
         (defect {defect}); levelwise compression refused"
    )]
    NotGraded {
        poly: String,
        level_max: u32,
        defect: usize,
    },
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// Failures of truncated-series constructions on the bidisc.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("Blaschke parameter must satisfy |a| < 1, got {param}")]
    ParameterOutOfRange { param: String },
    #[error("theta parameter must satisfy 0 < a < 1, got {param}")]
    ThetaParameterOutOfRange { param: String },
    #[error("coefficient {value} is not unimodular")]
    NotUnimodular { value: String },
    #[error("unsupported inner-function shape: {reason}")]
    UnsupportedShape { reason: String },
    #[error("truncation degree {given} too small, need at least {needed}")]
    TruncationTooSmall { given: u32, needed: u32 },
    #[error(transparent)]
    Domain(#[from] DomainError),
}
