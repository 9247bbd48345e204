use std::collections::BTreeSet;
use std::path::PathBuf;

use anyhow::anyhow;

use crate::csvio::{read_trace_csv, TraceRow};
use crate::error::{Failure, Outcome};

/// `plotdata` verb: merge trace CSVs into one long-format table and thin
/// each algorithm's rows to roughly `points` log-spaced iterations. The
/// first and last row of every algorithm always survive, and iteration
/// indices stay strictly increasing per algorithm.
pub fn merge_downsample(inputs: &[PathBuf], points: usize) -> Outcome<Vec<TraceRow>> {
    if points < 2 {
        return Err(Failure::input(anyhow!(
            "points must be at least 2, got {points}"
        )));
    }
    if inputs.is_empty() {
        return Err(Failure::input(anyhow!("no input files given")));
    }

    let mut groups: Vec<(String, Vec<TraceRow>)> = Vec::new();
    let mut problems = Vec::new();
    for path in inputs {
        match read_trace_csv(path) {
            Ok(rows) => {
                for row in rows {
                    match groups.iter_mut().find(|(label, _)| *label == row.algorithm) {
                        Some((_, rows)) => rows.push(row),
                        None => groups.push((row.algorithm.clone(), vec![row])),
                    }
                }
            }
            Err(e) => problems.push(e.to_string()),
        }
    }
    if !problems.is_empty() {
        return Err(Failure::input(anyhow!(problems.join("\n"))));
    }

    let mut merged = Vec::new();
    for (_, mut rows) in groups {
        rows.sort_by_key(|r| r.iteration);
        rows.dedup_by_key(|r| r.iteration);
        let keep = log_spaced_indices(&rows, points);
        for index in keep {
            merged.push(rows[index].clone());
        }
    }
    Ok(merged)
}

/// Indices of rows to keep: endpoints plus the first row at or past each
/// log-spaced iteration target. Rows must be sorted by iteration.
fn log_spaced_indices(rows: &[TraceRow], points: usize) -> Vec<usize> {
    if rows.len() <= points {
        return (0..rows.len()).collect();
    }
    let mut keep = BTreeSet::new();
    keep.insert(0);
    keep.insert(rows.len() - 1);
    let lo = (rows[0].iteration.max(1)) as f64;
    let hi = (rows[rows.len() - 1].iteration.max(1)) as f64;
    if hi > lo {
        let (ln_lo, ln_hi) = (lo.ln(), hi.ln());
        for j in 0..points {
            let t = ln_lo + (ln_hi - ln_lo) * j as f64 / (points - 1) as f64;
            let target = t.exp();
            let index = rows
                .partition_point(|r| (r.iteration as f64) < target)
                .min(rows.len() - 1);
            keep.insert(index);
        }
    }
    keep.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(algorithm: &str, iteration: u64) -> TraceRow {
        TraceRow {
            algorithm: algorithm.into(),
            iteration,
            relative_error: Some(1.0 / iteration as f64),
            objective: iteration as f64,
            constraint_norm: 0.0,
            dual_value: None,
            wall_ms: 0.0,
        }
    }

    #[test]
    fn downsampling_keeps_endpoints_and_monotonicity() {
        let rows: Vec<_> = (1..=1000).map(|t| row("homotopy", t)).collect();
        let keep = log_spaced_indices(&rows, 12);
        assert!(keep.len() <= 14);
        assert_eq!(*keep.first().unwrap(), 0);
        assert_eq!(*keep.last().unwrap(), 999);
        assert!(keep.windows(2).all(|w| w[0] < w[1]));
        // Log spacing concentrates early: more kept indices below 100
        // than a linear grid would keep.
        let early = keep.iter().filter(|&&i| rows[i].iteration <= 100).count();
        assert!(early >= keep.len() / 2);
    }

    #[test]
    fn short_series_pass_through() {
        let rows: Vec<_> = (1..=5).map(|t| row("dsm", t)).collect();
        assert_eq!(log_spaced_indices(&rows, 10), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn merge_groups_by_algorithm_and_dedupes() {
        let dir = tempfile::tempdir().unwrap();
        let a = dir.path().join("a.csv");
        let b = dir.path().join("b.csv");
        let rows_a: Vec<_> = (1..=30).map(|t| row("homotopy", t)).collect();
        let mut rows_b: Vec<_> = (1..=30).map(|t| row("dsm", t)).collect();
        // Overlapping duplicate iterations for homotopy in the second file.
        rows_b.extend((25..=35).map(|t| row("homotopy", t)));
        crate::csvio::write_rows_csv(&a, &rows_a).unwrap();
        crate::csvio::write_rows_csv(&b, &rows_b).unwrap();

        let merged = merge_downsample(&[a, b], 100).unwrap();
        let homotopy: Vec<u64> = merged
            .iter()
            .filter(|r| r.algorithm == "homotopy")
            .map(|r| r.iteration)
            .collect();
        let dsm: Vec<u64> = merged
            .iter()
            .filter(|r| r.algorithm == "dsm")
            .map(|r| r.iteration)
            .collect();
        assert_eq!(homotopy, (1..=35).collect::<Vec<_>>());
        assert_eq!(dsm, (1..=30).collect::<Vec<_>>());
    }

    #[test]
    fn unreadable_inputs_are_reported_per_file() {
        let dir = tempfile::tempdir().unwrap();
        let good = dir.path().join("good.csv");
        crate::csvio::write_rows_csv(&good, &[row("dsm", 1)]).unwrap();
        let bad1 = dir.path().join("bad1.csv");
        let bad2 = dir.path().join("bad2.csv");
        std::fs::write(&bad1, "x,y\n1,2\n").unwrap();
        std::fs::write(&bad2, "p,q\n3,4\n").unwrap();

        let err = merge_downsample(&[good, bad1, bad2], 10).unwrap_err();
        let message = err.to_string();
        assert!(message.contains("bad1.csv"));
        assert!(message.contains("bad2.csv"));
        assert_eq!(err.exit_code(), 2);
    }
}
