//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by numerical routines and constructors.
#[derive(Debug, Error)]
pub enum Error {
    /// A sampled derivative decreased where a monotone one was required.
    #[error("non-monotone input: {0}")]
    NonMonotoneInput(String),

    /// Adaptive quadrature failed to reach the requested tolerance.
    #[error("quadrature did not converge: {0}")]
    Divergence(String),

    /// No finite bracket for a root could be grown below the cap.
    #[error("no bracket below cap {cap}: {context}")]
    Bracket { cap: f64, context: String },

    /// Limit estimates at increasing scales disagree beyond tolerance.
    #[error("inconclusive growth classification: {0}")]
    InconclusiveGrowth(String),

    /// Log–log slope varies too much across decades.
    #[error("no stable slope: {0}")]
    NoStableSlope(String),

    /// A parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    Param(String),

    /// Lattice dimensions do not match.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    /// Sampled second differences of a profile are positive.
    #[error("profile not concave: {0}")]
    Concavity(String),

    /// A derivative needed by the check is not available.
    #[error("derivative unavailable: {0}")]
    Differentiability(String),

    /// A bisection or bracketing search failed within configured bounds.
    #[error("tolerance not reached: {0}")]
    Tolerance(String),

    /// Anchor search exceeded the configured cap.
    #[error("anchor search exhausted below cap {cap}: {context}")]
    SearchExhausted { cap: u64, context: String },

    /// A verification sub-check failed; names the part and index.
    #[error("verification part ({part}) failed at {at}: {detail}")]
    VerifyFailed {
        part: String,
        at: String,
        detail: String,
    },

    /// A serialized object could not be parsed.
    #[error("bad spec: {0}")]
    BadSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
