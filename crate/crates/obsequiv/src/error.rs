//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by simulation, estimation, and verification routines.
#[derive(Debug, Error)]
pub enum Error {
    /// The point lies on (or is finitely indistinguishable from) the excluded
    /// dyadic boundary set, where the map is not defined bijectively.
    #[error("point lies on the excluded dyadic boundary set; resample the initial condition")]
    ExcludedSet,

    /// An exact bit representation ran out of bits for the requested operation.
    #[error("exact bit width exceeded: {0}")]
    WidthExceeded(String),

    /// No partition cell contains the point (malformed partition).
    #[error("no cell contains the point {0:?}")]
    NoCell(Vec<f64>),

    /// A configured resource cap would be exceeded.
    #[error("resource limit: {0}")]
    ResourceLimit(String),

    /// A probability vector or transition matrix failed validation.
    #[error("bad distribution: {0}")]
    BadDistribution(String),

    /// The input sequence is too short for the requested statistic.
    #[error("sequence too short: {0}")]
    TooShort(String),

    /// A state never returns to itself, so its period is undefined.
    #[error("state {0} has no return path to itself; period undefined")]
    NoReturn(usize),

    /// A shift window has no coordinate to the right of the origin.
    #[error("shift window exhausted: no coordinate right of the origin")]
    WindowExhausted,

    /// No stationary distribution could be computed for the model.
    #[error("no stationary distribution: {0}")]
    NotStationary(String),

    /// Caller passed structurally invalid input.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
