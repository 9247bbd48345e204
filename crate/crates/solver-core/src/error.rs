use thiserror::Error;

/// Failure reported by a problem's smoothed-argmax oracle.
///
/// The solver does not interpret the message; it wraps the error with the
/// iteration (and stage, if running under the homotopy driver) at which the
/// oracle failed.
#[derive(Debug, Error)]
#[error("{0}")]
pub struct OracleError(pub String);

impl OracleError {
    pub fn new(message: impl Into<String>) -> Self {
        OracleError(message.into())
    }
}

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("theta must lie in (0, 1], got {0}")]
    InvalidTheta(f64),

    #[error("smoothing parameter must be positive and finite, got {0}")]
    InvalidMu(f64),

    #[error("iteration horizon must be at least 1")]
    EmptyHorizon,

    #[error("{what}: expected length {expected}, got {actual}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("oracle failure at iteration {iteration}: {message}")]
    Oracle { iteration: usize, message: String },

    #[error("stage {stage}: {source}")]
    Stage {
        stage: usize,
        #[source]
        source: Box<SolverError>,
    },
}

impl SolverError {
    /// Wraps an error with the homotopy stage it occurred in.
    pub fn in_stage(self, stage: usize) -> Self {
        SolverError::Stage {
            stage,
            source: Box::new(self),
        }
    }
}
