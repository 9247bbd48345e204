use solver_core::SolverError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error(transparent)]
    Solver(#[from] SolverError),
    /// An agent's inbox is missing a neighbor's block for the current
    /// phase. Cannot happen under the synchronous driver; guards against
    /// misuse of the phase functions.
    #[error("agent {to} expected a message from neighbor {from} this phase")]
    MissingMessage { from: usize, to: usize },
}
