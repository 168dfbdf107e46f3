use thiserror::Error;

/// Errors produced by simulation setup and execution.
#[derive(Debug, Error)]
pub enum WaveError {
    /// Invalid grid or parameter configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// Evaluation point outside the valid domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Field or source points coincide where a kernel is singular.
    #[error("singularity: {0}")]
    Singularity(String),

    /// Truncation order not supported by an operator expansion.
    #[error("unsupported expansion order {got} (maximum {max})")]
    UnsupportedOrder { got: usize, max: usize },

    /// Long-wave regime condition violated (e.g. 3 - 2h²K² <= 0).
    #[error("regime violation: {0}")]
    Regime(String),

    /// Grid too coarse to resolve the requested profile.
    #[error("resolution error: {0}")]
    Resolution(String),

    /// Non-finite values encountered during a spectral operation.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// Time stepping aborted (invariant violation or blow-up).
    #[error("integration aborted: {0}")]
    Aborted(String),

    /// Scenario validation failed; all violations are listed.
    #[error("scenario validation failed:\n{}", .0.join("\n"))]
    Validation(Vec<String>),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, WaveError>;
