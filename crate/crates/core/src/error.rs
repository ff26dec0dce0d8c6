//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpectralError {
    /// Evaluation requested at (or too close to) a pole of the continuation.
    #[error("pole at s = {location}")]
    Pole { location: String },

    /// Adaptive refinement stalled before reaching the requested tolerance.
    #[error("tolerance not met: requested {requested:e}, achieved {achieved:e}")]
    ToleranceNotMet { requested: f64, achieved: f64 },

    /// Direct summation requested outside the convergence half-plane.
    #[error("series diverges at s = {s}; direct summation requires s > {threshold}")]
    DivergentRegion { s: f64, threshold: f64 },

    /// Binomial expansion requested outside its disc of convergence.
    #[error("expansion diverges: q^2 = {q_squared} exceeds the first eigenvalue 2")]
    DivergentExpansion { q_squared: f64 },

    /// Polynomial is not expressible in the u-basis: iterated division by u
    /// left a degree-1 remainder.
    #[error("polynomial is not in the u-algebra: division left a non-constant remainder")]
    NonConstantRemainder,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, SpectralError>;
