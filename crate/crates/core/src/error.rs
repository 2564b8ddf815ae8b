use thiserror::Error;

/// Errors raised by the geometric and numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("p = {p} is (numerically) equal to -n = -{n}; use the dedicated L_-n functional")]
    PEqualsMinusN { p: f64, n: usize },

    #[error("non-convexity detected: principal radius {radius:e} at direction {direction:?}")]
    NonConvexDetected { radius: f64, direction: Vec<f64> },

    #[error("unsupported dimension {dim}: {reason}")]
    UnsupportedDimension { dim: usize, reason: &'static str },

    #[error("non-finite integrand value {value} at node {index} ({direction:?})")]
    NonFiniteIntegrand {
        index: usize,
        direction: Vec<f64>,
        value: f64,
    },

    #[error("integrand factor underflow ({value:e}) at direction {direction:?}")]
    Underflow { value: f64, direction: Vec<f64> },

    #[error("offset t = {t} outside admissible range [0, {limit}) (beta = {beta})")]
    TNotInRange { t: f64, beta: f64, limit: f64 },

    #[error("truncation order {order} exceeds the supported maximum {max}")]
    TruncationTooLarge { order: usize, max: usize },

    #[error("non-positive mass {value} cannot enter a logarithm")]
    NonPositiveMass { value: f64 },

    #[error("Renyi order alpha = p/(n+p) equals 1 (p = ±inf)")]
    AlphaOne,

    #[error("integer overflow computing {what}")]
    Overflow { what: &'static str },

    #[error("invalid body: {0}")]
    InvalidBody(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
