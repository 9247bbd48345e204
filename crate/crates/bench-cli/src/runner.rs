use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, Context};
use baselines::{
    default_admm_rho, default_pg_extra_alpha, dsm_run, fixed_smoothing_run, jacobi_admm_run,
    pg_extra_run, BaselineConfig, DEFAULT_DSM_ALPHA, DEFAULT_SMOOTHING_MU,
};
use geomedian::{
    dual_value, load_instance, save_instance, sigma_max_ata, GeoMedianInstance, GeoMedianProblem,
};
use simnet::run_distributed_logged;
use solver_core::{
    homotopy_run, ConstrainedProblem, HomotopyConfig, HorizonSchedule, StepSizeMode, Trace,
};

use crate::config::{AlgorithmChoice, EpsilonZeroMode, ExecutionMode, ExperimentConfig,
    HorizonMode, StepMode};
use crate::csvio::write_trace_csv;
use crate::error::{Failure, Outcome};
use crate::summary::{
    threshold_table, AlgorithmSummary, ExperimentSummary, InstanceSummary, ReferenceSummary,
};

/// Accuracy asked of the reference fixed-point solve.
pub const REFERENCE_TOL: f64 = 1e-10;
const REFERENCE_MAX_ITER: usize = 1_000_000;

pub struct GenReport {
    pub path: PathBuf,
    pub warnings: Vec<String>,
}

pub struct RunReport {
    pub summary: ExperimentSummary,
    pub summary_path: PathBuf,
    pub trace_paths: Vec<PathBuf>,
    pub warnings: Vec<String>,
    /// True when at least one requested algorithm failed.
    pub any_failed: bool,
}

fn build_instance(config: &ExperimentConfig) -> Outcome<GeoMedianInstance> {
    GeoMedianInstance::generate(
        config.n,
        config.d,
        config.connectivity_ratio,
        config.radius_value(),
        config.seed,
        (config.data_low, config.data_high),
    )
    .map_err(|e| Failure::input(anyhow!("cannot build instance: {e}")))
}

/// `gen` verb: build the instance described by the config and write it.
pub fn generate_instance(config: &ExperimentConfig, out: Option<&Path>) -> Outcome<GenReport> {
    let instance = build_instance(config)?;
    let path = out
        .map(Path::to_path_buf)
        .unwrap_or_else(|| config.instance_path());
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .with_context(|| format!("cannot create directory {}", parent.display()))
                .map_err(Failure::run)?;
        }
    }
    save_instance(&instance, &path)
        .map_err(|e| Failure::run(anyhow!("cannot write {}: {e}", path.display())))?;
    Ok(GenReport {
        path,
        warnings: instance.warnings(),
    })
}

/// Loads the instance for a run, or generates and saves it when absent.
/// A preexisting file must agree with the config on the generating keys.
fn obtain_instance(
    config: &ExperimentConfig,
    instance_override: Option<&Path>,
) -> Outcome<(GeoMedianInstance, Vec<String>)> {
    let path = instance_override
        .map(Path::to_path_buf)
        .unwrap_or_else(|| config.instance_path());
    if path.exists() {
        let instance = load_instance(&path)
            .map_err(|e| Failure::input(anyhow!("cannot load {}: {e}", path.display())))?;
        let matches = instance.num_agents() == config.n
            && instance.dim() == config.d
            && instance.seed() == config.seed
            && instance.connectivity_ratio() == config.connectivity_ratio
            && instance.radius() == config.radius_value();
        if !matches {
            return Err(Failure::input(anyhow!(
                "instance file {} does not match the config (n/d/seed/ratio/radius differ); \
                 delete it or point --instance elsewhere",
                path.display()
            )));
        }
        Ok((instance, Vec::new()))
    } else if instance_override.is_some() {
        Err(Failure::input(anyhow!(
            "instance file {} does not exist",
            path.display()
        )))
    } else {
        let report = generate_instance(config, Some(&path))?;
        let instance = load_instance(&report.path)
            .map_err(|e| Failure::run(anyhow!("cannot reload {}: {e}", path.display())))?;
        Ok((instance, report.warnings))
    }
}

/// Resolves the homotopy schedule from the config. Needed even when the
/// homotopy method is not requested: the baseline iteration budget
/// defaults to its total.
fn homotopy_config(
    config: &ExperimentConfig,
    problem: &GeoMedianProblem,
    sigma: f64,
) -> Outcome<HomotopyConfig> {
    let epsilon0 = match config.epsilon0_mode {
        EpsilonZeroMode::Auto => HomotopyConfig::default_epsilon0(problem),
        EpsilonZeroMode::Explicit => config.epsilon0.expect("validated"),
    };
    let horizon = match config.horizon_mode {
        HorizonMode::Ramp => HorizonSchedule::ramp_for(problem.diameter(), config.epsilon),
        HorizonMode::Constant => {
            HorizonSchedule::Constant(config.horizon_iters.expect("validated"))
        }
    };
    let step_mode = match config.step_size_mode {
        StepMode::Verbatim => StepSizeMode::Verbatim,
        StepMode::Scaled => StepSizeMode::Scaled {
            sigma_max_ata: sigma,
        },
    };
    let mut homotopy = HomotopyConfig::new(epsilon0, config.epsilon, horizon, step_mode)
        .map_err(|e| Failure::input(anyhow!("invalid homotopy schedule: {e}")))?;
    homotopy.observe_every = config.observe_every;
    homotopy
        .validate()
        .map_err(|e| Failure::input(anyhow!("invalid homotopy schedule: {e}")))?;
    Ok(homotopy)
}

/// Dispatches one algorithm. Errors come back as strings so a failure
/// isolates to its summary entry instead of aborting the experiment.
fn run_algorithm(
    choice: AlgorithmChoice,
    config: &ExperimentConfig,
    instance: &GeoMedianInstance,
    homotopy: &HomotopyConfig,
    budget: usize,
    reference: &[f64],
    dual: &dyn Fn(&[f64]) -> f64,
) -> Result<(Trace, Option<u64>), String> {
    let observe = config.observe_every;
    match choice {
        AlgorithmChoice::Homotopy => match config.execution {
            ExecutionMode::Centralized => {
                let problem = instance.problem();
                homotopy_run(&problem, homotopy, Some(reference), Some(dual))
                    .map(|t| (t, None))
                    .map_err(|e| e.to_string())
            }
            ExecutionMode::Distributed => {
                run_distributed_logged(instance, homotopy, Some(reference), Some(dual), None)
                    .map(|o| (o.trace, Some(o.messages_sent as u64)))
                    .map_err(|e| e.to_string())
            }
        },
        AlgorithmChoice::Dsm => {
            let alpha = config.dsm_alpha.unwrap_or(DEFAULT_DSM_ALPHA);
            let mut cfg = BaselineConfig::dsm(alpha, budget);
            cfg.observe_every = observe;
            dsm_run(instance, &cfg, Some(reference), |_| {})
                .map(|t| (t, None))
                .map_err(|e| e.to_string())
        }
        AlgorithmChoice::PgExtra => {
            let alpha = config
                .pg_extra_alpha
                .unwrap_or_else(|| default_pg_extra_alpha(instance.num_agents()));
            let mut cfg = BaselineConfig::pg_extra(alpha, budget);
            cfg.observe_every = observe;
            pg_extra_run(instance, &cfg, Some(reference), |_| {})
                .map(|t| (t, None))
                .map_err(|e| e.to_string())
        }
        AlgorithmChoice::JacobiAdmm => {
            let rho = match config.admm_rho {
                Some(r) => r,
                None => default_admm_rho(instance).map_err(|e| e.to_string())?,
            };
            let mut cfg = BaselineConfig::jacobi_admm(rho, budget);
            cfg.observe_every = observe;
            jacobi_admm_run(instance, &cfg, Some(reference), Some(dual), |_| {})
                .map(|t| (t, None))
                .map_err(|e| e.to_string())
        }
        AlgorithmChoice::FixedSmoothing => {
            let mu = config.smoothing_mu.unwrap_or(DEFAULT_SMOOTHING_MU);
            let mut cfg = BaselineConfig::fixed_smoothing(mu, homotopy.step_mode, budget);
            cfg.observe_every = observe;
            fixed_smoothing_run(instance, &cfg, Some(reference), Some(dual), |_| {})
                .map(|t| (t, None))
                .map_err(|e| e.to_string())
        }
    }
}

/// `run` verb: every requested algorithm on one instance, traces to CSV,
/// rollup to summary.json.
pub fn run_experiment(
    config: &ExperimentConfig,
    instance_override: Option<&Path>,
) -> Outcome<RunReport> {
    std::fs::create_dir_all(&config.output_dir)
        .with_context(|| format!("cannot create directory {}", config.output_dir.display()))
        .map_err(Failure::run)?;

    let (instance, warnings) = obtain_instance(config, instance_override)?;
    let problem = instance.problem();

    let sigma = sigma_max_ata(instance.mixing())
        .map_err(|e| Failure::run(anyhow!("operator norm estimation failed: {e}")))?;
    let homotopy = homotopy_config(config, &problem, sigma)?;
    let budget = config.baseline_max_iter.unwrap_or(homotopy.total_iterations());

    let reference = instance
        .reference_optimum(REFERENCE_TOL, REFERENCE_MAX_ITER)
        .map_err(|e| Failure::run(anyhow!("reference solve failed: {e}")))?;
    let reference_x = instance.stack_consensus(&reference.point);
    let dual = |lambda: &[f64]| dual_value(&instance, lambda);

    let mut entries = Vec::new();
    let mut trace_paths = Vec::new();
    let mut any_failed = false;

    for &choice in &config.algorithms {
        let start = Instant::now();
        let result = run_algorithm(
            choice, config, &instance, &homotopy, budget, &reference_x, &dual,
        );
        let wall_ms = start.elapsed().as_secs_f64() * 1e3;
        match result {
            Ok((trace, messages_sent)) => {
                let path = config.trace_path(choice);
                write_trace_csv(&path, &trace)?;
                trace_paths.push(path);
                let last = trace.records.last();
                entries.push(AlgorithmSummary {
                    algorithm: choice.label().to_string(),
                    status: "ok".into(),
                    error: None,
                    iterations: last.map(|r| r.iteration as u64),
                    final_relative_error: last.and_then(|r| r.relative_error),
                    final_objective: last.map(|r| r.objective),
                    final_constraint_norm: last.map(|r| r.constraint_norm),
                    final_dual_value: last.and_then(|r| r.dual_value),
                    thresholds: threshold_table(&trace.records),
                    messages_sent,
                    wall_ms,
                });
            }
            Err(message) => {
                any_failed = true;
                entries.push(AlgorithmSummary {
                    algorithm: choice.label().to_string(),
                    status: "error".into(),
                    error: Some(message),
                    iterations: None,
                    final_relative_error: None,
                    final_objective: None,
                    final_constraint_norm: None,
                    final_dual_value: None,
                    thresholds: Vec::new(),
                    messages_sent: None,
                    wall_ms,
                });
            }
        }
    }

    let summary = ExperimentSummary {
        version: crate::config::CONFIG_VERSION,
        instance: InstanceSummary {
            n: instance.num_agents(),
            d: instance.dim(),
            connectivity_ratio: instance.connectivity_ratio(),
            seed: instance.seed(),
            radius: instance.radius(),
        },
        execution: match config.execution {
            ExecutionMode::Centralized => "centralized".into(),
            ExecutionMode::Distributed => "distributed".into(),
        },
        epsilon: config.epsilon,
        epsilon0: homotopy.epsilon0,
        num_stages: homotopy.num_stages,
        observe_every: config.observe_every,
        reference: ReferenceSummary {
            objective: reference.objective,
            iterations: reference.iterations as u64,
        },
        algorithms: entries,
    };

    let summary_path = config.summary_path();
    let json = serde_json::to_string_pretty(&summary)
        .map_err(|e| Failure::run(anyhow!("cannot serialize summary: {e}")))?;
    std::fs::write(&summary_path, json + "\n")
        .with_context(|| format!("cannot write {}", summary_path.display()))
        .map_err(Failure::run)?;

    Ok(RunReport {
        summary,
        summary_path,
        trace_paths,
        warnings,
        any_failed,
    })
}
