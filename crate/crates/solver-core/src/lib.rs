//! Homotopy smoothing solver for linearly constrained convex programs
//!
//! ```text
//! minimize f(x)  subject to  A x = b,  x in X compact.
//! ```
//!
//! The method runs accelerated gradient ascent on a smoothed dual function
//! (`pds_run`) inside an outer loop that halves the smoothing level each
//! stage while warm-starting the multiplier and prox anchor
//! (`homotopy_run`). Problems plug in through the [`ConstrainedProblem`]
//! oracle trait; the solver never materializes the constraint matrix.

mod error;
mod homotopy;
mod pds;
mod problem;
mod theta;
mod trace;

pub use error::{OracleError, SolverError};
pub use homotopy::{homotopy_run, HomotopyConfig, HorizonSchedule};
pub use pds::{pds_run, PdsIterate, PdsOutput, PdsState, StepSizeMode};
pub use problem::ConstrainedProblem;
pub use theta::{theta_next, ThetaSchedule};
pub use trace::{l2_distance, l2_norm, IterationRecord, MetricEvaluator, StageSummary, Trace};
