//! Jacobian parallel ADMM.
//!
//! Proximal Jacobian decomposition in the style of Deng, Lai, Peng, and
//! Yin, "Parallel multi-block ADMM with o(1/k) convergence", Journal of
//! Scientific Computing 71(2), 2017: every block is updated in parallel
//! against the previous iterate (no Gauss-Seidel sweep), with a proximal
//! term that keeps the parallel updates stable, followed by multiplier
//! ascent on the consensus constraint A x = 0. Writing u = lambda + rho A x
//! and using tau = rho for the proximal weight:
//!
//! ```text
//! x_i^{t+1}    = argmin  ||x_i - b_i|| + (tau/2) ||x_i - (x_i^t - (A u)_i / tau)||^2
//!                subject to ||x_i - b_i|| <= radius,
//! lambda^{t+1} = lambda^t + rho A x^{t+1},
//! ```
//!
//! where the block argmin is the closed-form prox of the instance. The
//! benchmark weight is rho = 2 sigma_max(A), the operator norm of A itself
//! (not of A^T A).

use geomedian::{apply_a_flat, block_of, block_of_mut, prox_block, sigma_max_ata, GeoMedianInstance};
use solver_core::MetricEvaluator;

use crate::config::{BaselineAlgorithm, BaselineConfig, BaselineError};
use crate::{observe_now, single_stage_trace, BaselineIterate};

/// The benchmark proximal weight, 2 sigma_max(A), derived from the power
/// iteration estimate of sigma_max(A^T A) by a square root.
pub fn default_admm_rho(instance: &GeoMedianInstance) -> Result<f64, BaselineError> {
    Ok(2.0 * sigma_max_ata(instance.mixing())?.sqrt())
}

/// Runs the Jacobian parallel ADMM and reports the running average of the
/// iterates. `dual_eval` maps a multiplier to the dual objective for the
/// trace's dual-value column.
pub fn jacobi_admm_run<F>(
    instance: &GeoMedianInstance,
    config: &BaselineConfig,
    reference: Option<&[f64]>,
    dual_eval: Option<&dyn Fn(&[f64]) -> f64>,
    mut observer: F,
) -> Result<solver_core::Trace, BaselineError>
where
    F: FnMut(&BaselineIterate<'_>),
{
    config.expect(BaselineAlgorithm::JacobiAdmm)?;
    config.validate()?;
    let problem = instance.problem();
    let n = instance.num_agents();
    let d = instance.dim();
    let nd = n * d;
    let rho = config.admm_rho;

    let mut x = instance.points().to_vec();
    let mut x_next = vec![0.0; nd];
    let mut lambda = vec![0.0; nd];
    let mut ax = vec![0.0; nd];
    let mut u = vec![0.0; nd];
    let mut au = vec![0.0; nd];
    let mut center = vec![0.0; nd];
    let mut avg_accum = vec![0.0; nd];
    let mut x_avg = vec![0.0; nd];

    let mut evaluator = MetricEvaluator::new(&problem, reference, dual_eval);
    let mut records = Vec::new();
    evaluator.reset_clock();

    for t in 0..config.max_iter {
        apply_a_flat(instance.mixing(), d, &x, &mut ax);
        for k in 0..nd {
            u[k] = lambda[k] + rho * ax[k];
        }
        // A is symmetric, so (A^T u)_i is the i-th block of A u.
        apply_a_flat(instance.mixing(), d, &u, &mut au);
        for k in 0..nd {
            center[k] = x[k] - au[k] / rho;
        }
        for i in 0..n {
            prox_block(
                block_of(&center, i, d),
                instance.point(i),
                rho,
                instance.radius(),
                block_of_mut(&mut x_next, i, d),
            );
        }
        std::mem::swap(&mut x, &mut x_next);

        apply_a_flat(instance.mixing(), d, &x, &mut ax);
        for k in 0..nd {
            lambda[k] += rho * ax[k];
        }

        for k in 0..nd {
            avg_accum[k] += x[k];
        }
        let count = (t + 1) as f64;
        for k in 0..nd {
            x_avg[k] = avg_accum[k] / count;
        }

        let iteration = t + 1;
        if observe_now(iteration, config.max_iter, config.observe_every) {
            records.push(evaluator.record(1, iteration, 0.0, &x_avg, Some(&lambda)));
        }
        observer(&BaselineIterate {
            iteration: t,
            x: &x,
            x_report: &x_avg,
        });
    }

    Ok(single_stage_trace(
        BaselineAlgorithm::JacobiAdmm.label(),
        "-",
        0.0,
        config.max_iter,
        records,
        x_avg,
        Some(lambda),
    ))
}
