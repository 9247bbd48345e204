use crate::error::SolverError;
use crate::problem::ConstrainedProblem;
use crate::theta::theta_next;

/// How the dual ascent step length is chosen for a smoothing level mu.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepSizeMode {
    /// step = mu, valid when sigma_max(A^T A) <= 1.
    Verbatim,
    /// step = mu / sigma_max(A^T A); the caller supplies the operator norm.
    Scaled { sigma_max_ata: f64 },
}

impl StepSizeMode {
    pub fn dual_step(&self, mu: f64) -> f64 {
        match *self {
            StepSizeMode::Verbatim => mu,
            StepSizeMode::Scaled { sigma_max_ata } => mu / sigma_max_ata,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            StepSizeMode::Verbatim => "verbatim",
            StepSizeMode::Scaled { .. } => "scaled",
        }
    }

    /// Rejects a scaled mode whose operator norm is unusable.
    pub fn validate(&self) -> Result<(), SolverError> {
        if let StepSizeMode::Scaled { sigma_max_ata } = *self {
            if !(sigma_max_ata > 0.0 && sigma_max_ata.is_finite()) {
                return Err(SolverError::InvalidConfig(format!(
                    "scaled step mode needs a positive finite operator norm, got {sigma_max_ata}"
                )));
            }
        }
        Ok(())
    }
}

/// Mutable state of one accelerated dual ascent run at fixed mu.
#[derive(Debug, Clone)]
pub struct PdsState {
    /// Current multiplier lambda_t.
    pub lambda_curr: Vec<f64>,
    /// Previous multiplier lambda_{t-1} (equal to lambda_curr at t = 0).
    pub lambda_prev: Vec<f64>,
    /// theta_t.
    pub theta_curr: f64,
    /// theta_{t-1} (equal to 1 at t = 0).
    pub theta_prev: f64,
    /// Sum of (1/theta_s) x(lambda_hat_s) over completed iterations.
    pub avg_accum: Vec<f64>,
    /// Sum of the weights 1/theta_s, written S_t.
    pub weight_accum: f64,
    /// Prox anchor x_tilde for the smoothed argmax.
    pub anchor: Vec<f64>,
    /// Smoothing level mu for this run.
    pub mu: f64,
}

impl PdsState {
    pub fn new(lambda_init: &[f64], anchor: &[f64], mu: f64) -> Self {
        PdsState {
            lambda_curr: lambda_init.to_vec(),
            lambda_prev: lambda_init.to_vec(),
            theta_curr: 1.0,
            theta_prev: 1.0,
            avg_accum: vec![0.0; anchor.len()],
            weight_accum: 0.0,
            anchor: anchor.to_vec(),
            mu,
        }
    }
}

/// Snapshot passed to the observer once per iteration.
#[derive(Debug)]
pub struct PdsIterate<'a> {
    /// Iteration index t, zero-based within this run.
    pub iteration: usize,
    /// theta_t, the acceleration parameter used at this iteration.
    pub theta: f64,
    /// Tentative multiplier lambda_hat_t.
    pub lambda_hat: &'a [f64],
    /// Primal response x(lambda_hat_t).
    pub x: &'a [f64],
    /// Updated multiplier lambda_{t+1}.
    pub lambda_next: &'a [f64],
    /// Weighted running average of the primal responses through t.
    pub x_bar: &'a [f64],
    /// Accumulated weight S_{t+1} = sum of 1/theta_s for s <= t.
    pub weight_sum: f64,
}

/// Result of a fixed-mu run.
#[derive(Debug, Clone)]
pub struct PdsOutput {
    /// Weighted primal average x_bar_T.
    pub x_bar: Vec<f64>,
    /// Final multiplier lambda_T.
    pub lambda: Vec<f64>,
    /// Number of iterations performed.
    pub iterations: usize,
}

/// Runs T iterations of accelerated ascent on the smoothed dual at fixed mu.
///
/// Each iteration forms the tentative multiplier
///
/// ```text
/// lambda_hat_t = lambda_t + theta_t (1/theta_{t-1} - 1)(lambda_t - lambda_{t-1}),
/// ```
///
/// queries the primal response x(lambda_hat_t) through the problem's
/// smoothed-argmax oracle at anchor x_tilde, ascends the dual along the
/// constraint residual,
///
/// ```text
/// lambda_{t+1} = lambda_hat_t + step (A x(lambda_hat_t) - b),
/// ```
///
/// and folds x(lambda_hat_t) into the running average with weight 1/theta_t.
/// The observer is invoked exactly once per iteration, after the update.
pub fn pds_run<P, F>(
    problem: &P,
    lambda_init: &[f64],
    anchor: &[f64],
    mu: f64,
    horizon: usize,
    step_mode: StepSizeMode,
    mut observer: F,
) -> Result<PdsOutput, SolverError>
where
    P: ConstrainedProblem + ?Sized,
    F: FnMut(&PdsIterate<'_>),
{
    let n_dual = problem.dim_dual();
    let n_primal = problem.dim_primal();
    if lambda_init.len() != n_dual {
        return Err(SolverError::DimensionMismatch {
            what: "initial multiplier",
            expected: n_dual,
            actual: lambda_init.len(),
        });
    }
    if anchor.len() != n_primal {
        return Err(SolverError::DimensionMismatch {
            what: "prox anchor",
            expected: n_primal,
            actual: anchor.len(),
        });
    }
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(SolverError::InvalidMu(mu));
    }
    if horizon == 0 {
        return Err(SolverError::EmptyHorizon);
    }
    step_mode.validate()?;
    let step = step_mode.dual_step(mu);

    let mut state = PdsState::new(lambda_init, anchor, mu);
    let mut lambda_hat = vec![0.0; n_dual];
    let mut x = vec![0.0; n_primal];
    let mut residual = vec![0.0; n_dual];
    let mut x_bar = vec![0.0; n_primal];

    for t in 0..horizon {
        let theta_t = state.theta_curr;
        let coeff = theta_t * (1.0 / state.theta_prev - 1.0);
        for i in 0..n_dual {
            lambda_hat[i] =
                state.lambda_curr[i] + coeff * (state.lambda_curr[i] - state.lambda_prev[i]);
        }

        problem
            .smoothed_argmax(&lambda_hat, &state.anchor, mu, &mut x)
            .map_err(|e| SolverError::Oracle {
                iteration: t,
                message: e.to_string(),
            })?;

        problem.apply_constraint(&x, &mut residual);
        state.lambda_prev.copy_from_slice(&state.lambda_curr);
        for i in 0..n_dual {
            state.lambda_curr[i] = lambda_hat[i] + step * residual[i];
        }

        let weight = 1.0 / theta_t;
        for i in 0..n_primal {
            state.avg_accum[i] += weight * x[i];
        }
        state.weight_accum += weight;

        state.theta_prev = theta_t;
        state.theta_curr = theta_next(theta_t)?;

        for i in 0..n_primal {
            x_bar[i] = state.avg_accum[i] / state.weight_accum;
        }
        observer(&PdsIterate {
            iteration: t,
            theta: theta_t,
            lambda_hat: &lambda_hat,
            x: &x,
            lambda_next: &state.lambda_curr,
            x_bar: &x_bar,
            weight_sum: state.weight_accum,
        });
    }

    Ok(PdsOutput {
        x_bar,
        lambda: state.lambda_curr,
        iterations: horizon,
    })
}
