use geomedian::GeoMedianInstance;
use solver_core::{
    l2_norm, theta_next, ConstrainedProblem, HomotopyConfig, MetricEvaluator, SolverError,
    StageSummary, Trace,
};

use crate::agent::{argmax_step, dual_step, hat_step, AgentLocal, AgentState};
use crate::error::SimError;
use crate::message::{MessageLog, MessageLogRow, Phase, RoundMessage};

/// Result of a simulated run: the solver trace plus protocol accounting.
#[derive(Debug)]
pub struct DistributedOutcome {
    pub trace: Trace,
    /// Total messages delivered over the whole run. Each iteration costs
    /// one block per directed edge per phase, so two phases deliver
    /// 2 sum_i |N_i| messages per iteration.
    pub messages_sent: usize,
    /// Total iterations (rounds) across all stages.
    pub iterations: usize,
}

/// Runs the homotopy method as a synchronous message-passing protocol and
/// returns the trace, which matches the centralized driver on the same
/// instance and config.
pub fn run_distributed(
    instance: &GeoMedianInstance,
    config: &HomotopyConfig,
    reference: Option<&[f64]>,
    dual_eval: Option<&dyn Fn(&[f64]) -> f64>,
) -> Result<Trace, SimError> {
    run_distributed_logged(instance, config, reference, dual_eval, None).map(|o| o.trace)
}

/// [`run_distributed`] with protocol accounting and an optional per-message
/// log.
pub fn run_distributed_logged(
    instance: &GeoMedianInstance,
    config: &HomotopyConfig,
    reference: Option<&[f64]>,
    dual_eval: Option<&dyn Fn(&[f64]) -> f64>,
    mut log: Option<&mut MessageLog>,
) -> Result<DistributedOutcome, SimError> {
    config.validate().map_err(SimError::from)?;
    config.step_mode.validate().map_err(SimError::from)?;
    let problem = instance.problem();
    let diameter = problem.diameter();
    if !(diameter > 0.0 && diameter.is_finite()) {
        return Err(SolverError::InvalidConfig(format!(
            "problem diameter must be positive and finite, got {diameter}"
        ))
        .into());
    }

    let n = instance.num_agents();
    let d = instance.dim();
    let mixing = instance.mixing();
    let locals: Vec<AgentLocal> = (0..n)
        .map(|i| AgentLocal {
            id: i,
            neighbors: mixing.neighbors(i).to_vec(),
            weights: mixing.weights(i).to_vec(),
            point: instance.point(i).to_vec(),
            radius: instance.radius(),
        })
        .collect();
    let mut states: Vec<AgentState> = (0..n)
        .map(|i| AgentState::new(i, instance.point(i)))
        .collect();

    let mut evaluator = MetricEvaluator::new(&problem, reference, dual_eval);
    evaluator.reset_clock();
    let mut records = Vec::new();
    let mut stages = Vec::new();
    let mut x_bar_global = vec![0.0; n * d];
    let mut lambda_global = vec![0.0; n * d];
    let mut global_iter = 0usize;
    let mut messages_sent = 0usize;

    let mut mu = config.epsilon0 / (diameter * diameter);
    for k in 1..=config.num_stages {
        mu *= 0.5;
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(SolverError::InvalidMu(mu).in_stage(k).into());
        }
        let step = config.step_mode.dual_step(mu);
        let horizon = config.stage_horizon(k);
        for state in states.iter_mut() {
            state.begin_stage();
        }
        let mut theta_curr = 1.0f64;
        let mut theta_prev = 1.0f64;

        for t in 0..horizon {
            let theta_t = theta_curr;
            let coeff = theta_t * (1.0 / theta_prev - 1.0);
            let round = global_iter + 1;

            for state in states.iter_mut() {
                hat_step(state, coeff);
            }
            messages_sent += deliver(&locals, &mut states, Phase::LambdaHat, round, &mut log);
            for i in 0..n {
                argmax_step(&locals[i], &mut states[i], mu)?;
            }

            messages_sent += deliver(&locals, &mut states, Phase::X, round, &mut log);
            for i in 0..n {
                dual_step(&locals[i], &mut states[i], step, theta_t)?;
            }

            theta_prev = theta_t;
            theta_curr = theta_next(theta_t).map_err(|e| SimError::from(e.in_stage(k)))?;

            global_iter += 1;
            let stage_end = t + 1 == horizon;
            if global_iter % config.observe_every == 0 || stage_end {
                assemble(&states, d, &mut x_bar_global, &mut lambda_global);
                records.push(evaluator.record(
                    k,
                    global_iter,
                    mu,
                    &x_bar_global,
                    Some(&lambda_global),
                ));
            }
        }

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

    assemble(&states, d, &mut x_bar_global, &mut lambda_global);
    Ok(DistributedOutcome {
        trace: Trace {
            algorithm: "homotopy".into(),
            step_mode: config.step_mode.label().into(),
            records,
            stages,
            final_x: x_bar_global,
            final_lambda: Some(lambda_global),
        },
        messages_sent,
        iterations: global_iter,
    })
}

/// Concatenates the agents' average and multiplier blocks for observation.
/// Purely a reporting step; the protocol itself never forms these vectors.
fn assemble(states: &[AgentState], d: usize, x_bar: &mut [f64], lambda: &mut [f64]) {
    for (i, state) in states.iter().enumerate() {
        for k in 0..d {
            x_bar[i * d + k] = state.avg_accum_local[k] / state.weight_accum;
            lambda[i * d + k] = state.lambda_curr[k];
        }
    }
}

/// One synchronous exchange: every agent sends its current phase block to
/// each neighbor. Messages are materialized first (the network snapshot),
/// then delivered into inboxes, so no agent can observe a mid-phase write.
/// Sender order and per-sender receiver order are both ascending, making
/// delivery, and with it the whole run, deterministic.
fn deliver(
    locals: &[AgentLocal],
    states: &mut [AgentState],
    phase: Phase,
    round: usize,
    log: &mut Option<&mut MessageLog>,
) -> usize {
    let mut messages: Vec<RoundMessage> = Vec::new();
    for local in locals {
        let payload = match phase {
            Phase::LambdaHat => &states[local.id].lambda_hat,
            Phase::X => &states[local.id].x_local,
        };
        for &j in &local.neighbors {
            messages.push(RoundMessage {
                from: local.id,
                to: j,
                payload: payload.clone(),
            });
        }
    }
    for state in states.iter_mut() {
        state.inbox.clear();
    }
    let count = messages.len();
    for message in messages {
        if let Some(log) = log.as_deref_mut() {
            log.rows.push(MessageLogRow {
                round,
                phase,
                from: message.from,
                to: message.to,
                payload_norm: l2_norm(&message.payload),
            });
        }
        states[message.to].inbox.insert(message.from, message.payload);
    }
    count
}
