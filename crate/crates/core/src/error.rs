//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by state construction, evolution, and analysis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A superposition collapsed to (numerically) zero norm, e.g. the
    /// minus branch of an entangled coherent state at alpha = 0.
    #[error("degenerate state: unnormalized norm^2 = {norm_sq:.3e} below threshold")]
    DegenerateState { norm_sq: f64 },

    /// Probability weight near the truncation boundary exceeds the
    /// configured tolerance, so results would not be trustworthy.
    #[error("truncation insufficient: tail weight {tail:.3e} > tolerance {tol:.3e} at n_max = {n_max}")]
    TruncationInsufficient { tail: f64, tol: f64, n_max: usize },

    /// Two states with different truncation dimensions were combined.
    #[error("shape mismatch: n_max {left} vs {right}")]
    ShapeMismatch { left: usize, right: usize },

    /// The short-time propagator was requested outside its validity window.
    #[error("regime violation: |g t| = {gt:.3e} exceeds first-order limit {limit}")]
    RegimeViolation { gt: f64, limit: f64 },

    /// No weak-field closed form is available for the requested family/sign.
    #[error("no weak-field asymptote for this family/sign combination")]
    UnsupportedAsymptote,
}

pub type Result<T> = std::result::Result<T, Error>;
