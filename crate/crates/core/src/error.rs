use thiserror::Error;

/// Errors raised anywhere in the pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("denominator vanishes at the evaluation point")]
    DenominatorVanishes,
    #[error("symbol `{0}` is not bound")]
    UnboundSymbol(String),
    #[error("value is not finite")]
    NonFinite,
    #[error("value has no sign (not an ordered domain): {0}")]
    Unordered(String),
    #[error("mixed coefficient domains: {0}")]
    DomainMismatch(String),
    #[error("need {needed} coefficients, have {available}")]
    InsufficientCoefficients { needed: usize, available: usize },
    #[error("series is not normalized (constant term must be 1)")]
    NotNormalized,
    #[error("series is not even: odd coefficient at index {index} is significant")]
    NotEven { index: usize },
    #[error("need {needed} moments, have {available}")]
    InsufficientMoments { needed: usize, available: usize },
    #[error("lambda must be positive")]
    NonPositiveLambda,
    #[error("rho must be positive")]
    NonPositiveRho,
    #[error("difference table cross-check failed at cell ({j}, {k})")]
    CrossCheckFailed { j: usize, k: usize },
    #[error("parameter {name} = {value} hits a pole")]
    PoleAtParameter { name: String, value: String },
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
    #[error("quadrature did not converge: {0}")]
    QuadratureNotConverged(String),
    #[error("zero table parse error: {0}")]
    ParseError(String),
    #[error("zero table is not strictly increasing at line {line}")]
    NotMonotone { line: usize },
    #[error("root finding did not converge: {0}")]
    NoConvergence(String),
    #[error("no lambda available: {0}")]
    LambdaUnavailable(String),
    #[error("no rho available: {0}")]
    RhoUnavailable(String),
    #[error("shifted normalization G(ic) vanishes")]
    ShiftedNormalizationZero,
    #[error("shifted series is not even / not real: {0}")]
    NotEvenAfterShift(String),
    #[error("b0 must be nonzero")]
    ZeroB0,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
