use std::fmt;

/// One block sent along a graph edge during a phase.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundMessage {
    pub from: usize,
    pub to: usize,
    /// The sender's current block for this phase (a tentative multiplier
    /// block in the first phase, a primal block in the second).
    pub payload: Vec<f64>,
}

/// The two exchanges inside every iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    /// Tentative multiplier blocks go out; prox centers are assembled.
    LambdaHat,
    /// Primal blocks go out; the dual step consumes the local residual.
    X,
}

impl Phase {
    pub fn label(&self) -> &'static str {
        match self {
            Phase::LambdaHat => "lambda_hat",
            Phase::X => "x",
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One log line per delivered message.
#[derive(Debug, Clone, PartialEq)]
pub struct MessageLogRow {
    /// Global iteration (round), 1-based, cumulative across stages.
    pub round: usize,
    pub phase: Phase,
    pub from: usize,
    pub to: usize,
    pub payload_norm: f64,
}

/// In-memory message log, serializable to CSV for debugging runs.
#[derive(Debug, Default, Clone)]
pub struct MessageLog {
    pub rows: Vec<MessageLogRow>,
}

impl MessageLog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("round,phase,from,to,payload_norm\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                row.round, row.phase, row.from, row.to, row.payload_norm
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_header_and_one_line_per_message() {
        let mut log = MessageLog::new();
        log.rows.push(MessageLogRow {
            round: 1,
            phase: Phase::LambdaHat,
            from: 0,
            to: 2,
            payload_norm: 1.5,
        });
        log.rows.push(MessageLogRow {
            round: 1,
            phase: Phase::X,
            from: 2,
            to: 0,
            payload_norm: 0.25,
        });
        let csv = log.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "round,phase,from,to,payload_norm");
        assert_eq!(lines[1], "1,lambda_hat,0,2,1.5");
        assert_eq!(lines[2], "1,x,2,0,0.25");
        assert_eq!(lines.len(), 3);
    }
}
