//! Library half of the benchmark harness: experiment configuration,
//! algorithm dispatch, trace/summary serialization, plot-data reduction,
//! and the seeded property suites behind the `verify` verb. The binary in
//! `main.rs` is a thin argument-parsing shell over these modules.

pub mod config;
pub mod csvio;
pub mod error;
pub mod plotdata;
pub mod runner;
pub mod summary;
pub mod verify;

pub use config::{AlgorithmChoice, ExperimentConfig, CONFIG_VERSION};
pub use csvio::{read_trace_csv, write_rows_csv, write_trace_csv, TraceRow, TRACE_HEADER};
pub use error::{Failure, Outcome};
pub use plotdata::merge_downsample;
pub use runner::{generate_instance, run_experiment, RunReport};
pub use summary::{ExperimentSummary, ThresholdEntry, THRESHOLDS};
pub use verify::{all_suites, suite_by_name, SuiteReport};
