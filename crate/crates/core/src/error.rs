use thiserror::Error;

/// Errors raised by the algebra, solver and numeric layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("radicand mismatch: sqrt({0}) and sqrt({1}) cannot be combined")]
    RadicandMismatch(String, String),
    #[error("square root of negative number {0} is not supported")]
    NegativeRadicand(String),
    #[error("pole: denominator vanishes at t = {0}")]
    PoleEvaluation(String),
    #[error("unsupported factorization: {0}")]
    UnsupportedFactorization(String),
    #[error("rational function is not strictly proper")]
    ImproperRational,
    #[error("result has a polynomial part {0} and is not the transform of a sequence")]
    ImproperResult(String),
    #[error("degree {requested} exceeds the configured maximum {max}")]
    DegreeLimitExceeded { requested: u32, max: u32 },
    #[error("invalid recurrence: {0}")]
    InvalidSpec(String),
    #[error("forcing term {base}^n resonates with a characteristic root")]
    ResonantForcing { base: String },
    #[error("closed form disagrees with direct recursion at n = {index}")]
    VerificationFailed { index: u64 },
    #[error("series diverges: s = {s} does not exceed growth exponent s0 = {s0}")]
    DivergenceGuard { s: f64, s0: f64 },
    #[error("more than {cap} terms needed to reach tolerance at s = {s}")]
    TermCapExceeded { s: f64, cap: u64 },
    #[error("transform check failed at s = {s} with N = {terms}: discrepancy {discrepancy:e}")]
    CheckFailed {
        s: f64,
        terms: u64,
        discrepancy: f64,
    },
    #[error("f({0}) is zero")]
    ZeroDenominator(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
