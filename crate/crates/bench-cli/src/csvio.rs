use std::path::Path;

use anyhow::{anyhow, Context};
use serde::{Deserialize, Serialize};
use solver_core::Trace;

use crate::error::{Failure, Outcome};

/// Column order of every trace CSV this tool reads or writes.
pub const TRACE_HEADER: [&str; 7] = [
    "algorithm",
    "iteration",
    "relative_error",
    "objective",
    "constraint_norm",
    "dual_value",
    "wall_ms",
];

/// One trace CSV line. Optional metrics serialize as empty fields. Every
/// field except `wall_ms` is deterministic for a fixed config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub algorithm: String,
    pub iteration: u64,
    pub relative_error: Option<f64>,
    pub objective: f64,
    pub constraint_norm: f64,
    pub dual_value: Option<f64>,
    pub wall_ms: f64,
}

pub fn trace_rows(trace: &Trace) -> Vec<TraceRow> {
    trace
        .records
        .iter()
        .map(|r| TraceRow {
            algorithm: trace.algorithm.clone(),
            iteration: r.iteration as u64,
            relative_error: r.relative_error,
            objective: r.objective,
            constraint_norm: r.constraint_norm,
            dual_value: r.dual_value,
            wall_ms: r.wall_ms,
        })
        .collect()
}

pub fn write_rows_csv(path: &Path, rows: &[TraceRow]) -> Outcome<()> {
    let mut writer = csv::Writer::from_path(path)
        .with_context(|| format!("cannot create {}", path.display()))
        .map_err(Failure::run)?;
    for row in rows {
        writer
            .serialize(row)
            .with_context(|| format!("cannot write {}", path.display()))
            .map_err(Failure::run)?;
    }
    writer
        .flush()
        .with_context(|| format!("cannot write {}", path.display()))
        .map_err(Failure::run)?;
    Ok(())
}

pub fn write_trace_csv(path: &Path, trace: &Trace) -> Outcome<()> {
    write_rows_csv(path, &trace_rows(trace))
}

/// Reads a trace CSV, checking the exact column schema first.
pub fn read_trace_csv(path: &Path) -> Outcome<Vec<TraceRow>> {
    let mut reader = csv::Reader::from_path(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::input)?;
    let headers = reader
        .headers()
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::input)?;
    if headers.iter().ne(TRACE_HEADER.iter().copied()) {
        return Err(Failure::input(anyhow!(
            "{}: schema mismatch; expected columns {}, found {}",
            path.display(),
            TRACE_HEADER.join(","),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut rows = Vec::new();
    for (i, record) in reader.deserialize::<TraceRow>().enumerate() {
        let row = record
            .with_context(|| format!("{}: bad record on data line {}", path.display(), i + 1))
            .map_err(Failure::input)?;
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_rows() -> Vec<TraceRow> {
        vec![
            TraceRow {
                algorithm: "dsm".into(),
                iteration: 1,
                relative_error: Some(0.5),
                objective: 12.25,
                constraint_norm: 0.125,
                dual_value: None,
                wall_ms: 0.5,
            },
            TraceRow {
                algorithm: "dsm".into(),
                iteration: 2,
                relative_error: None,
                objective: 11.0,
                constraint_norm: 0.0625,
                dual_value: Some(-3.5),
                wall_ms: 1.0,
            },
        ]
    }

    #[test]
    fn rows_round_trip_through_csv() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("trace.csv");
        let rows = sample_rows();
        write_rows_csv(&path, &rows).unwrap();

        let text = std::fs::read_to_string(&path).unwrap();
        let first_line = text.lines().next().unwrap();
        assert_eq!(first_line, TRACE_HEADER.join(","));

        let back = read_trace_csv(&path).unwrap();
        assert_eq!(back, rows);
    }

    #[test]
    fn schema_mismatch_names_the_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bogus.csv");
        std::fs::write(&path, "a,b,c\n1,2,3\n").unwrap();
        let err = read_trace_csv(&path).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("bogus.csv"));
        assert!(err.to_string().contains("schema mismatch"));
    }
}
