use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeoError {
    #[error("need at least 3 agents, got {0}")]
    TooFewAgents(usize),

    #[error(
        "connectivity ratio {ratio} yields {target} edges; a connected graph \
         on {n} nodes needs at least {min}"
    )]
    RatioTooSparse {
        ratio: f64,
        target: usize,
        n: usize,
        min: usize,
    },

    #[error("graph is not connected")]
    Disconnected,

    #[error("invalid edge ({0}, {1})")]
    InvalidEdge(usize, usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("{what}: expected length {expected}, got {actual}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("power iteration did not converge within {0} iterations")]
    PowerIterationStalled(usize),

    #[error(
        "geometric median iteration stalled after {iterations} iterations \
         (last step {last_step:e})"
    )]
    WeiszfeldStalled {
        iterations: usize,
        last_step: f64,
        /// Last iterate, so callers can still inspect where it got stuck.
        point: Vec<f64>,
    },

    #[error("unsupported instance format version {0} (expected 1)")]
    UnsupportedVersion(u32),

    #[error("failed to read {path}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("failed to parse {path}")]
    Parse {
        path: String,
        #[source]
        source: serde_json::Error,
    },
}
