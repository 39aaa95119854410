use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("valuation is not determined: every known coefficient is zero")]
    IndeterminateValuation,
    #[error("leading coefficient is zero")]
    ZeroLeadingCoefficient,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("p/q does not approximate the series better than 1/q^2")]
    NotApproximating,
    #[error("series equals p/q exactly")]
    ExactMatch,
    #[error("index {index} out of range (have {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("not enough terms: need {needed}, have {have}")]
    InsufficientTerms { needed: usize, have: usize },
    #[error("not enough coefficients: need {needed}, have {have}")]
    InsufficientCoefficients { needed: usize, have: usize },
    #[error("not enough data: {0}")]
    InsufficientData(String),
    #[error("degree d = {0} has no closed-form recurrence (only d = 2, 3)")]
    UnsupportedDegree(usize),
    #[error("|b| must be at least 2, got {0}")]
    ArgumentTooSmall(String),
    #[error("factor t = {t} of the product vanishes at b")]
    ZeroFactor { t: u32 },
    #[error("g(b) = 0")]
    ZeroValue,
    #[error("no nonlinear partial quotient within {0} terms")]
    NotFound(usize),
    #[error(
        "expansion ran out at quotient {index} with an all-zero remainder; g is possibly rational"
    )]
    PossiblyRational { index: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("assertion failed: {0}")]
    AssertionFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
