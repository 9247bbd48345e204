use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use bench_cli::config::ExperimentConfig;
use bench_cli::csvio::write_rows_csv;
use bench_cli::error::{Failure, Outcome};
use bench_cli::plotdata::merge_downsample;
use bench_cli::runner::{generate_instance, run_experiment};
use bench_cli::verify::{all_suites, suite_by_name, SUITE_NAMES};

/// Benchmark harness for distributed geometric-median solvers.
///
/// Exit codes: 0 success, 1 algorithm or runtime failure, 2 bad
/// configuration or inputs.
#[derive(Parser)]
#[command(name = "bench-cli", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the instance described by a config and write it as JSON.
    Gen {
        /// Experiment config (TOML).
        #[arg(long)]
        config: PathBuf,
        /// Destination; defaults to <output_dir>/instance.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every configured algorithm on one instance; write per-iteration
    /// trace CSVs and a JSON summary into the output directory.
    Run {
        /// Experiment config (TOML).
        #[arg(long)]
        config: PathBuf,
        /// Reuse an existing instance file instead of
        /// <output_dir>/instance.json.
        #[arg(long)]
        instance: Option<PathBuf>,
    },
    /// Merge trace CSVs into one long-format table, downsampled on a
    /// log-spaced iteration grid for plotting.
    Plotdata {
        /// Input trace CSVs.
        #[arg(long, num_args = 1.., required = true)]
        inputs: Vec<PathBuf>,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        /// Target number of rows kept per algorithm.
        #[arg(long, default_value_t = 50)]
        points: usize,
    },
    /// Run the seeded property suites (prox, dual, mixing, smoothing,
    /// acceleration schedule) and report pass/fail per suite.
    Verify {
        /// Run a single suite by name instead of all of them.
        #[arg(long)]
        suite: Option<String>,
        /// Master seed for the randomized suites.
        #[arg(long, default_value_t = 20250816)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}

fn dispatch(cli: Cli) -> Outcome<u8> {
    match cli.command {
        Command::Gen { config, out } => {
            let config = ExperimentConfig::load(&config)?;
            let report = generate_instance(&config, out.as_deref())?;
            for warning in &report.warnings {
                eprintln!("warning: {warning}");
            }
            println!("wrote {}", report.path.display());
            Ok(0)
        }
        Command::Run { config, instance } => {
            let config = ExperimentConfig::load(&config)?;
            let report = run_experiment(&config, instance.as_deref())?;
            for warning in &report.warnings {
                eprintln!("warning: {warning}");
            }
            for entry in &report.summary.algorithms {
                match &entry.error {
                    None => {
                        let final_err = entry
                            .final_relative_error
                            .map(|e| format!("{e:.3e}"))
                            .unwrap_or_else(|| "-".into());
                        println!(
                            "{}: ok, {} iterations, final relative error {}",
                            entry.algorithm,
                            entry.iterations.unwrap_or(0),
                            final_err
                        );
                    }
                    Some(message) => {
                        eprintln!("{}: failed: {message}", entry.algorithm);
                    }
                }
            }
            println!("wrote {}", report.summary_path.display());
            Ok(if report.any_failed { 1 } else { 0 })
        }
        Command::Plotdata {
            inputs,
            out,
            points,
        } => {
            let rows = merge_downsample(&inputs, points)?;
            write_rows_csv(&out, &rows)?;
            println!("wrote {} ({} rows)", out.display(), rows.len());
            Ok(0)
        }
        Command::Verify { suite, seed } => {
            let reports = match suite {
                Some(name) => match suite_by_name(&name, seed) {
                    Some(report) => vec![report],
                    None => {
                        return Err(Failure::input(anyhow::anyhow!(
                            "unknown suite \"{name}\"; available: {}",
                            SUITE_NAMES.join(", ")
                        )));
                    }
                },
                None => all_suites(seed),
            };
            let mut all_passed = true;
            for report in &reports {
                println!("{}", report.render());
                all_passed &= report.passed;
            }
            Ok(if all_passed { 0 } else { 1 })
        }
    }
}
