use serde::{Deserialize, Serialize};
use solver_core::IterationRecord;

/// Relative-error levels tabulated in every run summary.
pub const THRESHOLDS: [f64; 3] = [1e-1, 1e-2, 1e-3];

/// First crossing of one relative-error threshold. With observation
/// thinning the crossing is only known up to the gap between observed
/// iterations, so it is reported as a closed interval; with thinning 1 the
/// endpoints coincide.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdEntry {
    pub threshold: f64,
    pub reached: bool,
    /// Earliest iteration the crossing could have happened at.
    pub lower_iteration: Option<u64>,
    /// Iteration the crossing was observed at.
    pub upper_iteration: Option<u64>,
}

/// Per-algorithm block of the run summary.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgorithmSummary {
    pub algorithm: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub final_relative_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub final_objective: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub final_constraint_norm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub final_dual_value: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub thresholds: Vec<ThresholdEntry>,
    /// Messages exchanged, for distributed runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub messages_sent: Option<u64>,
    pub wall_ms: f64,
}

/// Instance facts echoed into the summary for provenance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceSummary {
    pub n: usize,
    pub d: usize,
    pub connectivity_ratio: f64,
    pub seed: u64,
    pub radius: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReferenceSummary {
    /// Optimal objective value from the fixed-point reference solver.
    pub objective: f64,
    pub iterations: u64,
}

/// Top-level document written to summary.json.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub version: u32,
    pub instance: InstanceSummary,
    pub execution: String,
    pub epsilon: f64,
    pub epsilon0: f64,
    pub num_stages: usize,
    pub observe_every: usize,
    pub reference: ReferenceSummary,
    pub algorithms: Vec<AlgorithmSummary>,
}

/// Tabulates the first crossing of each threshold from observed records.
/// A crossing is pinned between the previous observed iteration (exclusive)
/// and the observing iteration (inclusive).
pub fn threshold_table(records: &[IterationRecord]) -> Vec<ThresholdEntry> {
    THRESHOLDS
        .iter()
        .map(|&threshold| {
            let mut prev_iteration = 0u64;
            for record in records {
                if let Some(rel) = record.relative_error {
                    if rel <= threshold {
                        return ThresholdEntry {
                            threshold,
                            reached: true,
                            lower_iteration: Some(prev_iteration + 1),
                            upper_iteration: Some(record.iteration as u64),
                        };
                    }
                }
                prev_iteration = record.iteration as u64;
            }
            ThresholdEntry {
                threshold,
                reached: false,
                lower_iteration: None,
                upper_iteration: None,
            }
        })
        .collect()
}
