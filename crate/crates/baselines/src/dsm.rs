//! Decentralized subgradient method.
//!
//! The classical consensus-plus-subgradient scheme of Nedic and Ozdaglar,
//! "Distributed subgradient methods for multi-agent optimization", IEEE
//! Transactions on Automatic Control 54(1), 2009. Each agent mixes its
//! neighbors' iterates through the doubly stochastic matrix and then steps
//! against a subgradient of its private objective term:
//!
//! ```text
//! x_i^{t+1} = sum_j w_ij x_j^t - alpha g_i^t,
//! g_i^t = (x_i^t - b_i) / ||x_i^t - b_i||   (0 when x_i^t = b_i).
//! ```
//!
//! The step size is held constant over the run, matching the benchmark
//! configuration, so the method stalls in a neighborhood of the optimum
//! whose size scales with alpha.

use geomedian::{apply_a_flat, block_of, GeoMedianInstance};
use solver_core::{l2_distance, MetricEvaluator};

use crate::config::{BaselineAlgorithm, BaselineConfig, BaselineError};
use crate::{observe_now, single_stage_trace, BaselineIterate};

/// Runs the decentralized subgradient method and reports the running
/// average of the iterates.
pub fn dsm_run<F>(
    instance: &GeoMedianInstance,
    config: &BaselineConfig,
    reference: Option<&[f64]>,
    mut observer: F,
) -> Result<solver_core::Trace, BaselineError>
where
    F: FnMut(&BaselineIterate<'_>),
{
    config.expect(BaselineAlgorithm::Dsm)?;
    config.validate()?;
    let problem = instance.problem();
    let n = instance.num_agents();
    let d = instance.dim();
    let nd = n * d;
    let alpha = config.step_size_alpha;

    let mut x = instance.points().to_vec();
    let mut next = vec![0.0; nd];
    let mut ax = vec![0.0; nd];
    let mut avg_accum = vec![0.0; nd];
    let mut x_avg = vec![0.0; nd];

    let mut evaluator = MetricEvaluator::new(&problem, reference, None);
    let mut records = Vec::new();
    evaluator.reset_clock();

    for t in 0..config.max_iter {
        // Mixing through the constraint operator: W x = x - A x.
        apply_a_flat(instance.mixing(), d, &x, &mut ax);
        for k in 0..nd {
            next[k] = x[k] - ax[k];
        }
        // Subgradient evaluated at the pre-mix iterate.
        for i in 0..n {
            let x_i = block_of(&x, i, d);
            let b_i = instance.point(i);
            let norm = l2_distance(x_i, b_i);
            if norm > 0.0 {
                let next_i = &mut next[i * d..(i + 1) * d];
                for k in 0..d {
                    next_i[k] -= alpha * (x_i[k] - b_i[k]) / norm;
                }
            }
        }
        std::mem::swap(&mut x, &mut next);

        for k in 0..nd {
            avg_accum[k] += x[k];
        }
        let count = (t + 1) as f64;
        for k in 0..nd {
            x_avg[k] = avg_accum[k] / count;
        }

        let iteration = t + 1;
        if observe_now(iteration, config.max_iter, config.observe_every) {
            records.push(evaluator.record(1, iteration, 0.0, &x_avg, None));
        }
        observer(&BaselineIterate {
            iteration: t,
            x: &x,
            x_report: &x_avg,
        });
    }

    Ok(single_stage_trace(
        BaselineAlgorithm::Dsm.label(),
        "-",
        0.0,
        config.max_iter,
        records,
        x_avg,
        None,
    ))
}
