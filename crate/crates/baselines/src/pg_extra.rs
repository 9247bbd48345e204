//! PG-EXTRA, the proximal gradient variant of EXTRA.
//!
//! Recursion from Shi, Ling, Wu, and Yin, "A proximal gradient algorithm
//! for decentralized composite optimization", IEEE Transactions on Signal
//! Processing 63(22), 2015, specialized to a pure nonsmooth objective
//! (the smooth term is zero here). With mixing matrix W and the corrected
//! second matrix (I + W) / 2:
//!
//! ```text
//! w^0     = W x^0,
//! x^{t+1} = prox_{alpha r}(w^t),
//! w^{t+1} = w^t + W x^{t+1} - (I + W) / 2 x^t,
//! ```
//!
//! where r(x) = sum_i ||x_i - b_i|| splits over agents, so the proximal map
//! is the blockwise shrinkage toward b_i. Unlike the smoothing methods the
//! prox here carries no ball cap; the shrinkage is the closed form with the
//! radius sent to infinity.

use geomedian::{apply_a_flat, block_of, block_of_mut, prox_block, GeoMedianInstance};
use solver_core::MetricEvaluator;

use crate::config::{BaselineAlgorithm, BaselineConfig, BaselineError};
use crate::{observe_now, single_stage_trace, BaselineIterate};

/// Runs PG-EXTRA and reports the running average of the iterates.
pub fn pg_extra_run<F>(
    instance: &GeoMedianInstance,
    config: &BaselineConfig,
    reference: Option<&[f64]>,
    mut observer: F,
) -> Result<solver_core::Trace, BaselineError>
where
    F: FnMut(&BaselineIterate<'_>),
{
    config.expect(BaselineAlgorithm::PgExtra)?;
    config.validate()?;
    let problem = instance.problem();
    let n = instance.num_agents();
    let d = instance.dim();
    let nd = n * d;
    let alpha = config.step_size_alpha;
    let inv_alpha = 1.0 / alpha;

    let mut x_prev = instance.points().to_vec();
    let mut x = vec![0.0; nd];
    let mut w = vec![0.0; nd];
    let mut ax = vec![0.0; nd];
    let mut ax_prev = vec![0.0; nd];
    let mut avg_accum = vec![0.0; nd];
    let mut x_avg = vec![0.0; nd];

    // w^0 = W x^0 = x^0 - A x^0.
    apply_a_flat(instance.mixing(), d, &x_prev, &mut ax);
    for k in 0..nd {
        w[k] = x_prev[k] - ax[k];
    }

    let mut evaluator = MetricEvaluator::new(&problem, reference, None);
    let mut records = Vec::new();
    evaluator.reset_clock();

    for t in 0..config.max_iter {
        // x^{t+1} = prox_{alpha r}(w^t), blockwise shrinkage toward b_i.
        for i in 0..n {
            prox_block(
                block_of(&w, i, d),
                instance.point(i),
                inv_alpha,
                f64::INFINITY,
                block_of_mut(&mut x, i, d),
            );
        }

        // w^{t+1} = w^t + W x^{t+1} - (x^t + W x^t) / 2.
        apply_a_flat(instance.mixing(), d, &x, &mut ax);
        apply_a_flat(instance.mixing(), d, &x_prev, &mut ax_prev);
        for k in 0..nd {
            let w_new = x[k] - ax[k];
            let w_old = x_prev[k] - ax_prev[k];
            w[k] += w_new - 0.5 * (x_prev[k] + w_old);
        }
        x_prev.copy_from_slice(&x);

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
        BaselineAlgorithm::PgExtra.label(),
        "-",
        0.0,
        config.max_iter,
        records,
        x_avg,
        None,
    ))
}
