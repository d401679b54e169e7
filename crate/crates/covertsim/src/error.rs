//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong while configuring or running an experiment.
#[derive(Debug, Error)]
pub enum Error {
    /// A configuration field violates its validity invariant.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Two transmitter/observer positions fell below the minimum separation.
    /// Callers must treat this as a corrupted slot, not clamp the distance.
    #[error("singular geometry in {context}: distance {distance:e} below 1e-12")]
    Singularity {
        distance: f64,
        context: &'static str,
    },

    /// An operation was called outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Log-log regression cannot be performed on the given points.
    #[error("degenerate regression: {0}")]
    DegenerateRegression(String),

    /// Sweep grids need at least four points for a meaningful fit.
    #[error("sweep grid too short: need at least 4 points, got {0}")]
    GridTooShort(usize),

    /// Refusing to emit an empty result set.
    #[error("no results to emit")]
    EmptyResults,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
