use solver_core::{ConstrainedProblem, OracleError};

/// Smallest nontrivial instance of the problem class:
///
///     minimize x  subject to  x = 0,  x in [-1, 1].
///
/// Optimum x* = 0 with multiplier lambda* = -1. The smoothed argmax has the
/// closed form clamp(anchor - (lambda + 1) / mu, -1, 1).
pub struct ScalarProblem {
    /// When set, the argmax oracle fails at this zero-based call index.
    pub fail_at_call: Option<usize>,
    pub calls: std::cell::Cell<usize>,
}

impl ScalarProblem {
    pub fn new() -> Self {
        ScalarProblem {
            fail_at_call: None,
            calls: std::cell::Cell::new(0),
        }
    }

    pub fn failing_at(call: usize) -> Self {
        ScalarProblem {
            fail_at_call: Some(call),
            calls: std::cell::Cell::new(0),
        }
    }
}

impl ConstrainedProblem for ScalarProblem {
    fn dim_primal(&self) -> usize {
        1
    }

    fn dim_dual(&self) -> usize {
        1
    }

    fn apply_constraint(&self, x: &[f64], out: &mut [f64]) {
        out[0] = x[0];
    }

    fn smoothed_argmax(
        &self,
        lambda: &[f64],
        anchor: &[f64],
        mu: f64,
        out: &mut [f64],
    ) -> Result<(), OracleError> {
        let call = self.calls.get();
        self.calls.set(call + 1);
        if self.fail_at_call == Some(call) {
            return Err(OracleError::new("synthetic failure"));
        }
        out[0] = (anchor[0] - (lambda[0] + 1.0) / mu).clamp(-1.0, 1.0);
        Ok(())
    }

    fn objective(&self, x: &[f64]) -> f64 {
        x[0]
    }

    fn diameter(&self) -> f64 {
        2.0
    }

    fn objective_bound(&self) -> f64 {
        1.0
    }

    fn is_feasible(&self, x: &[f64]) -> bool {
        x[0].abs() <= 1.0 + 1e-12
    }

    fn initial_point(&self) -> Vec<f64> {
        vec![0.0]
    }
}
