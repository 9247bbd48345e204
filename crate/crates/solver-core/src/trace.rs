use std::time::Instant;

use crate::problem::ConstrainedProblem;

/// One observed iterate, with every metric the benchmark reports.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    /// Homotopy stage (1-based); single-loop algorithms report 1 throughout.
    pub stage: usize,
    /// Global iteration count, 1-based and cumulative across stages.
    pub iteration: usize,
    /// Smoothing level in force, or 0 for non-smoothed algorithms.
    pub mu: f64,
    /// Objective value at the reported point.
    pub objective: f64,
    /// Euclidean norm of the constraint residual A x - b.
    pub constraint_norm: f64,
    /// ||x - x_ref|| / ||x_0 - x_ref||, when a reference point is known.
    pub relative_error: Option<f64>,
    /// Dual objective value, for algorithms that maintain a multiplier.
    pub dual_value: Option<f64>,
    /// Wall-clock milliseconds since the run started. Machine-dependent:
    /// every other field is deterministic for a fixed instance and config,
    /// this one is not.
    pub wall_ms: f64,
}

/// Per-stage rollup written by the homotopy driver.
#[derive(Debug, Clone)]
pub struct StageSummary {
    /// Stage index k, 1-based.
    pub stage: usize,
    /// Smoothing level mu_k.
    pub mu: f64,
    /// Iterations run in this stage.
    pub iterations: usize,
    /// f(x_bar^(k)).
    pub objective: f64,
    /// ||A x_bar^(k) - b||.
    pub constraint_norm: f64,
    /// Dual value at the stage-final multiplier, when an evaluator is given.
    pub dual_value: Option<f64>,
}

/// Full run history of one algorithm on one instance.
#[derive(Debug, Clone)]
pub struct Trace {
    /// Algorithm label, used verbatim in CSV output.
    pub algorithm: String,
    /// Step-size mode label ("verbatim", "scaled", or "-" when not
    /// applicable).
    pub step_mode: String,
    pub records: Vec<IterationRecord>,
    pub stages: Vec<StageSummary>,
    /// Final reported primal point.
    pub final_x: Vec<f64>,
    /// Final multiplier, for algorithms that maintain one.
    pub final_lambda: Option<Vec<f64>>,
}

/// Computes the per-record metrics. Every algorithm in the benchmark builds
/// its records through this one type so the reported numbers cannot drift
/// between implementations.
pub struct MetricEvaluator<'a> {
    problem: &'a dyn ConstrainedProblem,
    dual_eval: Option<&'a dyn Fn(&[f64]) -> f64>,
    /// ||x_0 - x_ref||, the relative-error denominator.
    denom: Option<f64>,
    reference: Option<&'a [f64]>,
    residual: Vec<f64>,
    start: Instant,
}

impl<'a> MetricEvaluator<'a> {
    /// `reference` is the known optimum used for relative error (skipped when
    /// absent or when it coincides with the initial point); `dual_eval` maps
    /// a multiplier to the dual objective value.
    pub fn new(
        problem: &'a dyn ConstrainedProblem,
        reference: Option<&'a [f64]>,
        dual_eval: Option<&'a dyn Fn(&[f64]) -> f64>,
    ) -> Self {
        let x0 = problem.initial_point();
        let denom = reference.and_then(|r| {
            let d = l2_distance(&x0, r);
            (d > 0.0).then_some(d)
        });
        MetricEvaluator {
            problem,
            dual_eval,
            denom,
            reference,
            residual: vec![0.0; problem.dim_dual()],
            start: Instant::now(),
        }
    }

    /// Restarts the wall clock; call at the top of an algorithm run so that
    /// wall_ms measures the run, not evaluator construction.
    pub fn reset_clock(&mut self) {
        self.start = Instant::now();
    }

    pub fn record(
        &mut self,
        stage: usize,
        iteration: usize,
        mu: f64,
        x: &[f64],
        lambda: Option<&[f64]>,
    ) -> IterationRecord {
        self.problem.apply_constraint(x, &mut self.residual);
        let constraint_norm = l2_norm(&self.residual);
        let relative_error = match (self.reference, self.denom) {
            (Some(r), Some(d)) => Some(l2_distance(x, r) / d),
            _ => None,
        };
        let dual_value = match (self.dual_eval, lambda) {
            (Some(f), Some(l)) => Some(f(l)),
            _ => None,
        };
        IterationRecord {
            stage,
            iteration,
            mu,
            objective: self.problem.objective(x),
            constraint_norm,
            relative_error,
            dual_value,
            wall_ms: self.start.elapsed().as_secs_f64() * 1e3,
        }
    }

    pub fn dual_value(&self, lambda: &[f64]) -> Option<f64> {
        self.dual_eval.map(|f| f(lambda))
    }
}

pub fn l2_norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

pub fn l2_distance(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}
