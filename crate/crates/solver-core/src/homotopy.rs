use crate::error::SolverError;
use crate::pds::{pds_run, StepSizeMode};
use crate::problem::ConstrainedProblem;
use crate::trace::{MetricEvaluator, StageSummary, Trace};

/// Per-stage iteration budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HorizonSchedule {
    /// Every stage runs the same number of iterations.
    Constant(usize),
    /// Stage k of K runs ceil(scale * k / K) iterations (at least 1), so
    /// later stages, which need more accuracy, get more work.
    Ramp { scale: f64 },
}

impl HorizonSchedule {
    /// The ramp scale used in the benchmark: diameter / epsilon^0.8.
    pub fn ramp_for(diameter: f64, epsilon: f64) -> Self {
        HorizonSchedule::Ramp {
            scale: diameter / epsilon.powf(0.8),
        }
    }

    fn validate(&self) -> Result<(), SolverError> {
        match *self {
            HorizonSchedule::Constant(t) if t == 0 => Err(SolverError::InvalidConfig(
                "constant horizon must be at least 1".into(),
            )),
            HorizonSchedule::Ramp { scale } if !(scale > 0.0 && scale.is_finite()) => Err(
                SolverError::InvalidConfig(format!("ramp scale must be positive, got {scale}")),
            ),
            _ => Ok(()),
        }
    }
}

/// Configuration of the outer homotopy loop.
#[derive(Debug, Clone)]
pub struct HomotopyConfig {
    /// Initial target accuracy epsilon_0; mu_0 = epsilon_0 / diameter^2.
    pub epsilon0: f64,
    /// Final target accuracy.
    pub epsilon: f64,
    /// Number of stages K. Must be at least
    /// ceil(log2(epsilon0 / epsilon)) + 1 so that the final smoothing level
    /// reaches the target.
    pub num_stages: usize,
    pub horizon: HorizonSchedule,
    pub step_mode: StepSizeMode,
    /// Metrics are recorded every this many global iterations (stage-final
    /// iterates are always recorded). 1 records everything.
    pub observe_every: usize,
}

impl HomotopyConfig {
    /// Smallest admissible stage count for the accuracy pair.
    pub fn required_stages(epsilon0: f64, epsilon: f64) -> usize {
        let ratio = epsilon0 / epsilon;
        ((ratio.log2() - 1e-12).ceil().max(0.0)) as usize + 1
    }

    /// Config with the minimum stage count for the given accuracies.
    pub fn new(
        epsilon0: f64,
        epsilon: f64,
        horizon: HorizonSchedule,
        step_mode: StepSizeMode,
    ) -> Result<Self, SolverError> {
        let config = HomotopyConfig {
            epsilon0,
            epsilon,
            num_stages: Self::required_stages(epsilon0, epsilon),
            horizon,
            step_mode,
            observe_every: 1,
        };
        config.validate()?;
        Ok(config)
    }

    /// Default initial accuracy for a problem: max(2 M, 1) where M bounds
    /// |f| over the feasible set.
    pub fn default_epsilon0(problem: &dyn ConstrainedProblem) -> f64 {
        (2.0 * problem.objective_bound()).max(1.0)
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        if !(self.epsilon0 > 0.0 && self.epsilon0.is_finite()) {
            return Err(SolverError::InvalidConfig(format!(
                "epsilon0 must be positive and finite, got {}",
                self.epsilon0
            )));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(SolverError::InvalidConfig(format!(
                "epsilon must be positive and finite, got {}",
                self.epsilon
            )));
        }
        let required = Self::required_stages(self.epsilon0, self.epsilon);
        if self.num_stages < required {
            return Err(SolverError::InvalidConfig(format!(
                "{} stages cannot reach epsilon {} from epsilon0 {}; need at least {}",
                self.num_stages, self.epsilon, self.epsilon0, required
            )));
        }
        if self.observe_every == 0 {
            return Err(SolverError::InvalidConfig(
                "observe_every must be at least 1".into(),
            ));
        }
        self.horizon.validate()
    }

    /// Iteration budget for stage k (1-based).
    pub fn stage_horizon(&self, stage: usize) -> usize {
        match self.horizon {
            HorizonSchedule::Constant(t) => t,
            HorizonSchedule::Ramp { scale } => {
                let frac = scale * stage as f64 / self.num_stages as f64;
                (frac.ceil() as usize).max(1)
            }
        }
    }

    /// Total iterations over all stages.
    pub fn total_iterations(&self) -> usize {
        (1..=self.num_stages).map(|k| self.stage_horizon(k)).sum()
    }
}

/// Runs the homotopy method: K stages of fixed-mu accelerated dual ascent
/// with mu halved at every stage, the multiplier warm-started from the
/// previous stage, the prox anchor set to the previous stage's primal
/// average, and the primal average restarted each stage.
///
/// `reference` enables relative-error reporting; `dual_eval` enables dual
/// values in the trace (the solver itself never needs the dual objective).
pub fn homotopy_run(
    problem: &dyn ConstrainedProblem,
    config: &HomotopyConfig,
    reference: Option<&[f64]>,
    dual_eval: Option<&dyn Fn(&[f64]) -> f64>,
) -> Result<Trace, SolverError> {
    config.validate()?;
    let diameter = problem.diameter();
    if !(diameter > 0.0 && diameter.is_finite()) {
        return Err(SolverError::InvalidConfig(format!(
            "problem diameter must be positive and finite, got {diameter}"
        )));
    }

    let mut mu = config.epsilon0 / (diameter * diameter);
    let mut lambda = vec![0.0; problem.dim_dual()];
    let mut x_bar = problem.initial_point();
    let mut evaluator = MetricEvaluator::new(problem, reference, dual_eval);
    evaluator.reset_clock();

    let mut records = Vec::new();
    let mut stages = Vec::new();
    let mut global_iter = 0usize;

    for k in 1..=config.num_stages {
        mu *= 0.5;
        let horizon = config.stage_horizon(k);
        let output = {
            let evaluator = &mut evaluator;
            let records = &mut records;
            let global_iter = &mut global_iter;
            pds_run(
                problem,
                &lambda,
                &x_bar,
                mu,
                horizon,
                config.step_mode,
                |it| {
                    *global_iter += 1;
                    let stage_end = it.iteration + 1 == horizon;
                    if *global_iter % config.observe_every == 0 || stage_end {
                        records.push(evaluator.record(
                            k,
                            *global_iter,
                            mu,
                            it.x_bar,
                            Some(it.lambda_next),
                        ));
                    }
                },
            )
            .map_err(|e| e.in_stage(k))?
        };
        lambda = output.lambda;
        x_bar = output.x_bar;

        let last = records.last().expect("stage end is always recorded");
        stages.push(StageSummary {
            stage: k,
            mu,
            iterations: horizon,
            objective: last.objective,
            constraint_norm: last.constraint_norm,
            dual_value: last.dual_value,
        });
    }

    Ok(Trace {
        algorithm: "homotopy".into(),
        step_mode: config.step_mode.label().into(),
        records,
        stages,
        final_x: x_bar,
        final_lambda: Some(lambda),
    })
}
