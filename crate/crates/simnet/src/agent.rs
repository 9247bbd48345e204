use std::collections::BTreeMap;

use geomedian::{prox_block, prox_center, weighted_diff_accum};

use crate::error::SimError;

/// Static data an agent holds: its graph neighborhood with mixing weights
/// and its private problem block. Never mutated during a run.
#[derive(Debug, Clone)]
pub struct AgentLocal {
    pub id: usize,
    /// Neighbor ids, ascending, never including the agent itself.
    pub neighbors: Vec<usize>,
    /// Mixing weights w_ij aligned with `neighbors`.
    pub weights: Vec<f64>,
    /// The agent's data point b_i.
    pub point: Vec<f64>,
    /// Ball radius of the local feasible set.
    pub radius: f64,
}

/// Mutable per-agent solver state. The phase functions below read and
/// write nothing else; anything from another agent must arrive in `inbox`.
#[derive(Debug, Clone)]
pub struct AgentState {
    pub id: usize,
    /// Multiplier block lambda_{t,i}.
    pub lambda_curr: Vec<f64>,
    /// Previous multiplier block lambda_{t-1,i}.
    pub lambda_prev: Vec<f64>,
    /// Tentative multiplier block lambda_hat_{t,i}.
    pub lambda_hat: Vec<f64>,
    /// Local primal response x_i(lambda_hat_t).
    pub x_local: Vec<f64>,
    /// Local prox anchor block.
    pub x_anchor: Vec<f64>,
    /// Weighted sum of this agent's primal responses in the current stage.
    pub avg_accum_local: Vec<f64>,
    /// Sum of the averaging weights 1/theta_s this stage (identical across
    /// agents, carried per agent because the average is assembled locally).
    pub weight_accum: f64,
    /// Blocks received in the current phase, keyed by sender id. Refilled
    /// by the driver each phase; keys are always graph neighbors.
    pub inbox: BTreeMap<usize, Vec<f64>>,
}

impl AgentState {
    /// Fresh state at the start of a run: zero multiplier, anchor at the
    /// given block, empty averages.
    pub fn new(id: usize, anchor: &[f64]) -> Self {
        let d = anchor.len();
        AgentState {
            id,
            lambda_curr: vec![0.0; d],
            lambda_prev: vec![0.0; d],
            lambda_hat: vec![0.0; d],
            x_local: vec![0.0; d],
            x_anchor: anchor.to_vec(),
            avg_accum_local: vec![0.0; d],
            weight_accum: 0.0,
            inbox: BTreeMap::new(),
        }
    }

    /// The agent's block of the stage primal average.
    pub fn x_bar_block(&self) -> Vec<f64> {
        self.avg_accum_local
            .iter()
            .map(|a| a / self.weight_accum)
            .collect()
    }

    /// Stage transition: anchor moves to the stage average, the average
    /// restarts, the multiplier warm-starts (prev = curr), and the
    /// acceleration bookkeeping is reset by the driver's theta schedule.
    pub fn begin_stage(&mut self) {
        if self.weight_accum > 0.0 {
            for k in 0..self.x_anchor.len() {
                self.x_anchor[k] = self.avg_accum_local[k] / self.weight_accum;
            }
        }
        self.avg_accum_local.iter_mut().for_each(|a| *a = 0.0);
        self.weight_accum = 0.0;
        self.lambda_prev.copy_from_slice(&self.lambda_curr);
    }
}

/// First half of phase one, before any communication: the agent forms its
/// tentative multiplier block from its own multiplier history. The
/// acceleration coefficient theta_t (1/theta_{t-1} - 1) is a pre-shared
/// deterministic scalar, identical across agents.
pub fn hat_step(state: &mut AgentState, coeff: f64) {
    for k in 0..state.lambda_hat.len() {
        state.lambda_hat[k] =
            state.lambda_curr[k] + coeff * (state.lambda_curr[k] - state.lambda_prev[k]);
    }
}

/// Second half of phase one, after the lambda_hat exchange: the agent
/// assembles its block of A lambda_hat from the inbox, forms the prox
/// center, and solves its block subproblem in closed form. Touches only
/// own state and inbox; neighbor summation runs in ascending id order,
/// matching the centralized operator exactly.
pub fn argmax_step(local: &AgentLocal, state: &mut AgentState, mu: f64) -> Result<(), SimError> {
    let d = local.point.len();
    let mut s = vec![0.0; d];
    for (pos, &j) in local.neighbors.iter().enumerate() {
        let other = state
            .inbox
            .get(&j)
            .ok_or(SimError::MissingMessage { from: j, to: local.id })?;
        weighted_diff_accum(&state.lambda_hat, other, local.weights[pos], &mut s);
    }
    let mut center = vec![0.0; d];
    prox_center(&state.x_anchor, &s, mu, &mut center);
    prox_block(&center, &local.point, mu, local.radius, &mut state.x_local);
    Ok(())
}

/// Phase two, after the x exchange: the agent assembles its block of the
/// constraint residual A x from the inbox, ascends its multiplier along
/// it, and folds its primal block into the stage average with weight
/// 1/theta_t.
pub fn dual_step(
    local: &AgentLocal,
    state: &mut AgentState,
    step: f64,
    theta_t: f64,
) -> Result<(), SimError> {
    let d = local.point.len();
    let mut residual = vec![0.0; d];
    for (pos, &j) in local.neighbors.iter().enumerate() {
        let other = state
            .inbox
            .get(&j)
            .ok_or(SimError::MissingMessage { from: j, to: local.id })?;
        weighted_diff_accum(&state.x_local, other, local.weights[pos], &mut residual);
    }
    state.lambda_prev.copy_from_slice(&state.lambda_curr);
    for k in 0..d {
        state.lambda_curr[k] = state.lambda_hat[k] + step * residual[k];
    }
    let weight = 1.0 / theta_t;
    for k in 0..d {
        state.avg_accum_local[k] += weight * state.x_local[k];
    }
    state.weight_accum += weight;
    Ok(())
}
