//! Single-stage smoothing at a fixed mu.
//!
//! The accelerated dual ascent that powers the homotopy method, run once
//! with a constant smoothing level instead of a halving schedule: the
//! multiplier starts at zero, the prox anchor stays at the data points, and
//! the weighted primal average is never restarted. Equivalent to the
//! homotopy driver with a single stage whose smoothing level is forced to
//! `smoothing_mu`. Choosing mu is the method's dilemma: accuracy demands a
//! small value, but the dual step shrinks with mu, so early progress slows
//! accordingly.

use geomedian::GeoMedianInstance;
use solver_core::{pds_run, ConstrainedProblem, MetricEvaluator};

use crate::config::{BaselineAlgorithm, BaselineConfig, BaselineError};
use crate::{observe_now, single_stage_trace, BaselineIterate};

/// Runs fixed-mu smoothing for `max_iter` iterations and reports the
/// weighted primal average native to the accelerated ascent.
pub fn fixed_smoothing_run<F>(
    instance: &GeoMedianInstance,
    config: &BaselineConfig,
    reference: Option<&[f64]>,
    dual_eval: Option<&dyn Fn(&[f64]) -> f64>,
    mut observer: F,
) -> Result<solver_core::Trace, BaselineError>
where
    F: FnMut(&BaselineIterate<'_>),
{
    config.expect(BaselineAlgorithm::FixedSmoothing)?;
    config.validate()?;
    let problem = instance.problem();
    let mu = config.smoothing_mu;
    let anchor = problem.initial_point();
    let lambda0 = vec![0.0; instance.num_agents() * instance.dim()];

    let mut evaluator = MetricEvaluator::new(&problem, reference, dual_eval);
    let mut records = Vec::new();
    evaluator.reset_clock();

    let output = pds_run(
        &problem,
        &lambda0,
        &anchor,
        mu,
        config.max_iter,
        config.step_mode,
        |it| {
            let iteration = it.iteration + 1;
            if observe_now(iteration, config.max_iter, config.observe_every) {
                records.push(evaluator.record(1, iteration, mu, it.x_bar, Some(it.lambda_next)));
            }
            observer(&BaselineIterate {
                iteration: it.iteration,
                x: it.x,
                x_report: it.x_bar,
            });
        },
    )?;

    Ok(single_stage_trace(
        BaselineAlgorithm::FixedSmoothing.label(),
        config.step_mode.label(),
        mu,
        config.max_iter,
        records,
        output.x_bar,
        Some(output.lambda),
    ))
}
