use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("reversed interval [{a}, {b}]")]
    ReversedInterval { a: f64, b: f64 },

    #[error("interval [{a}, {b}] leaves the unit interval")]
    OutOfDomain { a: f64, b: f64 },

    #[error("set is not in canonical form: {0}")]
    NonCanonicalSet(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("integrand takes negative value {value} at {location}; use the shifted operator")]
    NegativeIntegrand { value: f64, location: String },

    #[error("lower bound {bound} violated: f = {value} at {location}")]
    LowerBoundViolated {
        bound: f64,
        value: f64,
        location: String,
    },

    #[error("strict positivity violated for term {term}: denominator {denominator:e}")]
    NotStrictlyPositive { term: String, denominator: f64 },

    #[error("dominance mu <= delta violated: mu(A) = {mu}, delta(A) = {delta} on {set}")]
    DominanceViolated { mu: f64, delta: f64, set: String },

    #[error("beta quadrature did not converge after {steps} steps (last value {value})")]
    NotConverged { value: f64, steps: usize },

    #[error("hypothesis probe failed: {0}")]
    ProbeFailed(String),

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
