use std::fmt;
use std::str::FromStr;

use geomedian::GeoError;
use solver_core::{SolverError, StepSizeMode};
use thiserror::Error;

/// Subgradient step size used in the benchmark runs.
pub const DEFAULT_DSM_ALPHA: f64 = 10.0;

/// Smoothing level of the fixed-mu baseline in the benchmark runs.
pub const DEFAULT_SMOOTHING_MU: f64 = 1e-5;

/// PG-EXTRA step size used in the benchmark runs: 5 on small networks,
/// 20 from 50 agents up.
pub fn default_pg_extra_alpha(num_agents: usize) -> f64 {
    if num_agents < 50 {
        5.0
    } else {
        20.0
    }
}

#[derive(Debug, Error)]
pub enum BaselineError {
    #[error("invalid baseline configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Instance(#[from] GeoError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaselineAlgorithm {
    Dsm,
    PgExtra,
    JacobiAdmm,
    FixedSmoothing,
}

impl BaselineAlgorithm {
    pub const ALL: [BaselineAlgorithm; 4] = [
        BaselineAlgorithm::Dsm,
        BaselineAlgorithm::PgExtra,
        BaselineAlgorithm::JacobiAdmm,
        BaselineAlgorithm::FixedSmoothing,
    ];

    /// Label used verbatim in trace and CSV output.
    pub fn label(&self) -> &'static str {
        match self {
            BaselineAlgorithm::Dsm => "dsm",
            BaselineAlgorithm::PgExtra => "pg_extra",
            BaselineAlgorithm::JacobiAdmm => "jacobi_admm",
            BaselineAlgorithm::FixedSmoothing => "fixed_smoothing",
        }
    }
}

impl fmt::Display for BaselineAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for BaselineAlgorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BaselineAlgorithm::ALL
            .iter()
            .copied()
            .find(|a| a.label() == s)
            .ok_or_else(|| format!("unknown baseline algorithm {s:?}"))
    }
}

/// Tuning knobs for one baseline run. Fields irrelevant to the selected
/// algorithm are carried but neither validated nor read.
#[derive(Debug, Clone)]
pub struct BaselineConfig {
    pub algorithm: BaselineAlgorithm,
    /// Step size for DSM (where 0 degenerates to pure consensus averaging)
    /// and PG-EXTRA (strictly positive).
    pub step_size_alpha: f64,
    /// Proximal weight of the Jacobian ADMM; [`default_admm_rho`] derives
    /// the benchmark value from the constraint operator norm.
    pub admm_rho: f64,
    /// Constant smoothing level of the fixed-mu baseline.
    pub smoothing_mu: f64,
    pub max_iter: usize,
    /// Dual step rule for the fixed-mu baseline (unused elsewhere).
    pub step_mode: StepSizeMode,
    /// Trace thinning: record every this many iterations (the final
    /// iteration is always recorded). 1 records everything.
    pub observe_every: usize,
}

impl BaselineConfig {
    fn base(algorithm: BaselineAlgorithm, max_iter: usize) -> Self {
        BaselineConfig {
            algorithm,
            step_size_alpha: DEFAULT_DSM_ALPHA,
            admm_rho: 1.0,
            smoothing_mu: DEFAULT_SMOOTHING_MU,
            max_iter,
            step_mode: StepSizeMode::Verbatim,
            observe_every: 1,
        }
    }

    pub fn dsm(alpha: f64, max_iter: usize) -> Self {
        BaselineConfig {
            step_size_alpha: alpha,
            ..Self::base(BaselineAlgorithm::Dsm, max_iter)
        }
    }

    pub fn pg_extra(alpha: f64, max_iter: usize) -> Self {
        BaselineConfig {
            step_size_alpha: alpha,
            ..Self::base(BaselineAlgorithm::PgExtra, max_iter)
        }
    }

    pub fn jacobi_admm(rho: f64, max_iter: usize) -> Self {
        BaselineConfig {
            admm_rho: rho,
            ..Self::base(BaselineAlgorithm::JacobiAdmm, max_iter)
        }
    }

    pub fn fixed_smoothing(mu: f64, step_mode: StepSizeMode, max_iter: usize) -> Self {
        BaselineConfig {
            smoothing_mu: mu,
            step_mode,
            ..Self::base(BaselineAlgorithm::FixedSmoothing, max_iter)
        }
    }

    /// Checks the fields the selected algorithm actually reads.
    pub fn validate(&self) -> Result<(), BaselineError> {
        if self.max_iter == 0 {
            return Err(BaselineError::InvalidConfig(
                "max_iter must be at least 1".into(),
            ));
        }
        if self.observe_every == 0 {
            return Err(BaselineError::InvalidConfig(
                "observe_every must be at least 1".into(),
            ));
        }
        match self.algorithm {
            BaselineAlgorithm::Dsm => {
                if !(self.step_size_alpha >= 0.0 && self.step_size_alpha.is_finite()) {
                    return Err(BaselineError::InvalidConfig(format!(
                        "DSM step size must be finite and non-negative, got {}",
                        self.step_size_alpha
                    )));
                }
            }
            BaselineAlgorithm::PgExtra => {
                if !(self.step_size_alpha > 0.0 && self.step_size_alpha.is_finite()) {
                    return Err(BaselineError::InvalidConfig(format!(
                        "PG-EXTRA step size must be finite and positive, got {}",
                        self.step_size_alpha
                    )));
                }
            }
            BaselineAlgorithm::JacobiAdmm => {
                if !(self.admm_rho > 0.0 && self.admm_rho.is_finite()) {
                    return Err(BaselineError::InvalidConfig(format!(
                        "ADMM proximal weight must be finite and positive, got {}",
                        self.admm_rho
                    )));
                }
            }
            BaselineAlgorithm::FixedSmoothing => {
                if !(self.smoothing_mu > 0.0 && self.smoothing_mu.is_finite()) {
                    return Err(BaselineError::InvalidConfig(format!(
                        "smoothing level must be finite and positive, got {}",
                        self.smoothing_mu
                    )));
                }
            }
        }
        Ok(())
    }

    /// Guards each runner against being handed another algorithm's config.
    pub(crate) fn expect(&self, algorithm: BaselineAlgorithm) -> Result<(), BaselineError> {
        if self.algorithm != algorithm {
            return Err(BaselineError::InvalidConfig(format!(
                "config selects {}, but {} was invoked",
                self.algorithm,
                algorithm.label()
            )));
        }
        Ok(())
    }
}
