//! Comparator algorithms for the distributed geometric-median benchmark.
//!
//! Four methods run against the homotopy solver on the same instances:
//!
//! * [`dsm_run`]: the decentralized subgradient method,
//! * [`pg_extra_run`]: PG-EXTRA, the proximal variant of EXTRA,
//! * [`jacobi_admm_run`]: Jacobian (all blocks parallel) proximal ADMM,
//! * [`fixed_smoothing_run`]: single-stage dual smoothing at constant mu.
//!
//! All four share the instance type, report through the same
//! [`solver_core::Trace`] schema, and compute their per-iteration metrics
//! with the same [`solver_core::MetricEvaluator`], so the benchmark numbers
//! cannot drift between implementations. Reported points are plain running
//! averages of the iterates, except for fixed smoothing, which keeps the
//! weighted average native to the accelerated dual ascent it wraps.

mod admm;
mod config;
mod dsm;
mod pg_extra;
mod smoothing;

use solver_core::{IterationRecord, StageSummary, Trace};

pub use admm::{default_admm_rho, jacobi_admm_run};
pub use config::{
    default_pg_extra_alpha, BaselineAlgorithm, BaselineConfig, BaselineError, DEFAULT_DSM_ALPHA,
    DEFAULT_SMOOTHING_MU,
};
pub use dsm::dsm_run;
pub use pg_extra::pg_extra_run;
pub use smoothing::fixed_smoothing_run;

/// Snapshot handed to the per-iteration observer of every baseline.
#[derive(Debug)]
pub struct BaselineIterate<'a> {
    /// Iteration index, zero-based.
    pub iteration: usize,
    /// The raw iterate after this iteration's update.
    pub x: &'a [f64],
    /// The point the trace reports (running average of the iterates).
    pub x_report: &'a [f64],
}

/// Iterations at which a record is emitted: every `every`-th one, plus the
/// final iteration unconditionally. `iteration` is 1-based.
pub(crate) fn observe_now(iteration: usize, max_iter: usize, every: usize) -> bool {
    iteration % every == 0 || iteration == max_iter
}

/// Assembles the single-stage trace every baseline returns.
pub(crate) fn single_stage_trace(
    algorithm: &str,
    step_mode: &str,
    mu: f64,
    iterations: usize,
    records: Vec<IterationRecord>,
    final_x: Vec<f64>,
    final_lambda: Option<Vec<f64>>,
) -> Trace {
    let last = records.last().expect("the final iteration is always recorded");
    let stages = vec![StageSummary {
        stage: 1,
        mu,
        iterations,
        objective: last.objective,
        constraint_norm: last.constraint_norm,
        dual_value: last.dual_value,
    }];
    Trace {
        algorithm: algorithm.into(),
        step_mode: step_mode.into(),
        records,
        stages,
        final_x,
        final_lambda,
    }
}
