use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Two agents are (numerically) coincident, so the LOS is undefined.
    #[error("degenerate geometry: separation {r} m is below the coincidence threshold")]
    DegenerateGeometry { r: f64 },

    /// A vehicle state violates a model precondition (e.g. non-positive speed).
    #[error("invalid state: {0}")]
    InvalidState(String),

    /// Gain exponents violate the fixed-time convergence premise.
    #[error("gain condition violated: {0}")]
    GainCondition(String),

    /// A configuration value is out of range or inconsistent.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// The integrator produced a non-finite state.
    #[error("propagation failed at t = {t:.6} s: {detail}")]
    Propagation { t: f64, detail: String },

    #[error("unknown preset '{0}'")]
    UnknownPreset(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
