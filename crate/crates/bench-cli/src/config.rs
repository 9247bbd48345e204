use std::fmt;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use serde::{Deserialize, Serialize};

use crate::error::{Failure, Outcome};

/// Format version accepted by this build. Bumped whenever a key changes
/// meaning, so stale configs fail loudly instead of drifting silently.
pub const CONFIG_VERSION: u32 = 1;

/// How the per-agent ball radius is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiusMode {
    /// radius = 10 sqrt(d), wide enough that the consensus optimum of data
    /// drawn from [0, 10]^d is always feasible.
    TenSqrtD,
    /// radius is read from the `radius` key.
    Explicit,
}

/// How the initial accuracy of the homotopy schedule is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EpsilonZeroMode {
    /// max(2 M, 1) with M the objective bound of the instance.
    Auto,
    /// epsilon0 is read from the `epsilon0` key.
    Explicit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HorizonMode {
    /// Stage horizons grow linearly to a diameter/epsilon^0.8 scale.
    Ramp,
    /// Every stage runs `horizon_iters` iterations.
    Constant,
}

/// Where the homotopy method executes. `Distributed` routes it through
/// the message-passing simulator; the single-loop baselines always run as
/// plain centralized loops, which produce the same iterates either way.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExecutionMode {
    Centralized,
    Distributed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepMode {
    /// Dual step equal to the smoothing level mu.
    Verbatim,
    /// Dual step mu divided by the largest eigenvalue of A^T A.
    Scaled,
}

/// Algorithms the `run` verb can dispatch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgorithmChoice {
    Homotopy,
    Dsm,
    PgExtra,
    JacobiAdmm,
    FixedSmoothing,
}

impl AlgorithmChoice {
    pub fn label(self) -> &'static str {
        match self {
            AlgorithmChoice::Homotopy => "homotopy",
            AlgorithmChoice::Dsm => "dsm",
            AlgorithmChoice::PgExtra => "pg_extra",
            AlgorithmChoice::JacobiAdmm => "jacobi_admm",
            AlgorithmChoice::FixedSmoothing => "fixed_smoothing",
        }
    }
}

impl fmt::Display for AlgorithmChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One experiment, described by a flat key-value document. Unknown keys
/// are hard errors so a config never silently means less than it says.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Must equal [`CONFIG_VERSION`].
    pub version: u32,

    // Instance.
    pub n: usize,
    pub d: usize,
    #[serde(default = "default_ratio")]
    pub connectivity_ratio: f64,
    pub seed: u64,
    #[serde(default = "default_data_low")]
    pub data_low: f64,
    #[serde(default = "default_data_high")]
    pub data_high: f64,
    #[serde(default = "default_radius_mode")]
    pub radius_mode: RadiusMode,
    #[serde(default)]
    pub radius: Option<f64>,

    // Algorithms.
    #[serde(default = "default_algorithms")]
    pub algorithms: Vec<AlgorithmChoice>,

    // Homotopy schedule.
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default = "default_epsilon0_mode")]
    pub epsilon0_mode: EpsilonZeroMode,
    #[serde(default)]
    pub epsilon0: Option<f64>,
    #[serde(default = "default_horizon_mode")]
    pub horizon_mode: HorizonMode,
    #[serde(default)]
    pub horizon_iters: Option<usize>,
    #[serde(default = "default_step_mode")]
    pub step_size_mode: StepMode,

    // Execution and output.
    #[serde(default = "default_execution")]
    pub execution: ExecutionMode,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default = "default_observe_every")]
    pub observe_every: usize,

    // Baseline parameters; omitted keys fall back to the benchmark
    // defaults (dsm 10, pg_extra by network size, admm 2 sigma_max(A),
    // smoothing 1e-5).
    #[serde(default)]
    pub dsm_alpha: Option<f64>,
    #[serde(default)]
    pub pg_extra_alpha: Option<f64>,
    #[serde(default)]
    pub admm_rho: Option<f64>,
    #[serde(default)]
    pub smoothing_mu: Option<f64>,
    /// Iteration budget for the single-loop baselines; defaults to the
    /// homotopy method's total budget so curves share an x-axis.
    #[serde(default)]
    pub baseline_max_iter: Option<usize>,
}

fn default_ratio() -> f64 {
    0.15
}

fn default_data_low() -> f64 {
    0.0
}

fn default_data_high() -> f64 {
    10.0
}

fn default_radius_mode() -> RadiusMode {
    RadiusMode::TenSqrtD
}

fn default_algorithms() -> Vec<AlgorithmChoice> {
    vec![
        AlgorithmChoice::Homotopy,
        AlgorithmChoice::Dsm,
        AlgorithmChoice::PgExtra,
        AlgorithmChoice::JacobiAdmm,
        AlgorithmChoice::FixedSmoothing,
    ]
}

fn default_epsilon() -> f64 {
    1e-3
}

fn default_epsilon0_mode() -> EpsilonZeroMode {
    EpsilonZeroMode::Auto
}

fn default_horizon_mode() -> HorizonMode {
    HorizonMode::Ramp
}

fn default_step_mode() -> StepMode {
    StepMode::Verbatim
}

fn default_execution() -> ExecutionMode {
    ExecutionMode::Centralized
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

fn default_observe_every() -> usize {
    1
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Outcome<Self> {
        let config: ExperimentConfig = toml::from_str(text)
            .map_err(|e| Failure::input(anyhow!("config parse error: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Outcome<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))
            .map_err(Failure::input)?;
        Self::from_toml_str(&text)
            .map_err(|e| Failure::input(anyhow!("{}: {e}", path.display())))
    }

    /// Cross-field checks beyond what deserialization enforces.
    pub fn validate(&self) -> Outcome<()> {
        let fail = |msg: String| Err(Failure::input(anyhow!(msg)));

        if self.version != CONFIG_VERSION {
            return fail(format!(
                "config version {} not supported; this build reads version {CONFIG_VERSION}",
                self.version
            ));
        }
        if self.n < 2 {
            return fail(format!("n must be at least 2, got {}", self.n));
        }
        if self.d == 0 {
            return fail("d must be at least 1".into());
        }
        if !(self.connectivity_ratio > 0.0 && self.connectivity_ratio <= 1.0) {
            return fail(format!(
                "connectivity_ratio must lie in (0, 1], got {}",
                self.connectivity_ratio
            ));
        }
        if !(self.data_low < self.data_high) {
            return fail(format!(
                "data range must satisfy data_low < data_high, got [{}, {}]",
                self.data_low, self.data_high
            ));
        }
        match (self.radius_mode, self.radius) {
            (RadiusMode::Explicit, None) => {
                return fail("radius_mode = \"explicit\" requires the radius key".into());
            }
            (RadiusMode::Explicit, Some(r)) if !(r > 0.0 && r.is_finite()) => {
                return fail(format!("radius must be positive and finite, got {r}"));
            }
            (RadiusMode::TenSqrtD, Some(_)) => {
                return fail(
                    "radius is only read when radius_mode = \"explicit\"; remove the key".into(),
                );
            }
            _ => {}
        }
        for (i, a) in self.algorithms.iter().enumerate() {
            if self.algorithms[..i].contains(a) {
                return fail(format!("algorithm \"{a}\" listed twice"));
            }
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return fail(format!(
                "epsilon must be positive and finite, got {}",
                self.epsilon
            ));
        }
        match (self.epsilon0_mode, self.epsilon0) {
            (EpsilonZeroMode::Explicit, None) => {
                return fail("epsilon0_mode = \"explicit\" requires the epsilon0 key".into());
            }
            (EpsilonZeroMode::Explicit, Some(e0)) if !(e0 > 0.0 && e0.is_finite()) => {
                return fail(format!("epsilon0 must be positive and finite, got {e0}"));
            }
            (EpsilonZeroMode::Auto, Some(_)) => {
                return fail(
                    "epsilon0 is only read when epsilon0_mode = \"explicit\"; remove the key"
                        .into(),
                );
            }
            _ => {}
        }
        match (self.horizon_mode, self.horizon_iters) {
            (HorizonMode::Constant, None) => {
                return fail("horizon_mode = \"constant\" requires the horizon_iters key".into());
            }
            (HorizonMode::Constant, Some(0)) => {
                return fail("horizon_iters must be at least 1".into());
            }
            (HorizonMode::Ramp, Some(_)) => {
                return fail(
                    "horizon_iters is only read when horizon_mode = \"constant\"; remove the key"
                        .into(),
                );
            }
            _ => {}
        }
        if self.observe_every == 0 {
            return fail("observe_every must be at least 1".into());
        }
        if self.baseline_max_iter == Some(0) {
            return fail("baseline_max_iter must be at least 1".into());
        }
        if let Some(a) = self.dsm_alpha {
            if !(a >= 0.0 && a.is_finite()) {
                return fail(format!("dsm_alpha must be nonnegative and finite, got {a}"));
            }
        }
        if let Some(a) = self.pg_extra_alpha {
            if !(a > 0.0 && a.is_finite()) {
                return fail(format!("pg_extra_alpha must be positive and finite, got {a}"));
            }
        }
        if let Some(r) = self.admm_rho {
            if !(r > 0.0 && r.is_finite()) {
                return fail(format!("admm_rho must be positive and finite, got {r}"));
            }
        }
        if let Some(m) = self.smoothing_mu {
            if !(m > 0.0 && m.is_finite()) {
                return fail(format!("smoothing_mu must be positive and finite, got {m}"));
            }
        }
        Ok(())
    }

    /// Ball radius after resolving the mode.
    pub fn radius_value(&self) -> f64 {
        match self.radius_mode {
            RadiusMode::TenSqrtD => 10.0 * (self.d as f64).sqrt(),
            RadiusMode::Explicit => self.radius.expect("validated"),
        }
    }

    /// Path of the instance file inside the output directory.
    pub fn instance_path(&self) -> PathBuf {
        self.output_dir.join("instance.json")
    }

    pub fn summary_path(&self) -> PathBuf {
        self.output_dir.join("summary.json")
    }

    pub fn trace_path(&self, algorithm: AlgorithmChoice) -> PathBuf {
        self.output_dir.join(format!("trace_{}.csv", algorithm.label()))
    }
}
