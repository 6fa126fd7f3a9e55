//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("degenerate orientation: |pitch| too close to pi/2 ({pitch} rad)")]
    DegenerateOrientation { pitch: f64 },

    #[error("joint limit violation: joint {joint} = {value} outside [{lo}, {hi}]")]
    JointLimitViolation {
        joint: usize,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("context too long: {got} states exceeds maximum {max}")]
    ContextTooLong { got: usize, max: usize },

    #[error("trajectory too short: {got} frames, need at least {need}")]
    TrajectoryTooShort { got: usize, need: usize },

    #[error("non-finite loss at epoch {epoch}, batch {batch}: {detail}")]
    NonFiniteLoss {
        epoch: usize,
        batch: usize,
        detail: String,
    },

    #[error("non-finite gradient for parameter {0}")]
    NonFiniteGradient(String),

    #[error("demo too short: {got} steps, need at least {need}")]
    DemoTooShort { got: usize, need: usize },

    #[error("dynamics failure for candidate {candidate}: {source}")]
    DynamicsFailure {
        candidate: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("keypoint count mismatch: {got} vs {expected}")]
    CountMismatch { got: usize, expected: usize },

    #[error("episode trace missing required channel: {0}")]
    MissingChannel(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("format error in {path}: {detail}")]
    Format { path: String, detail: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
