use crate::error::OracleError;

/// Oracle bundle describing a linearly constrained convex program
///
/// ```text
/// minimize f(x)  subject to  A x = b,  x in X,
/// ```
///
/// with X compact. The solver never sees A, b, f, or X directly; it only
/// calls these oracles, so implementations are free to apply the constraint
/// operator matrix-free.
pub trait ConstrainedProblem {
    /// Length of the primal vector x.
    fn dim_primal(&self) -> usize;

    /// Length of the dual vector lambda (rows of A).
    fn dim_dual(&self) -> usize;

    /// Writes A x - b into `out` (`out.len() == dim_dual()`).
    fn apply_constraint(&self, x: &[f64], out: &mut [f64]);

    /// Writes the maximizer of
    ///
    /// ```text
    /// -<lambda, A x - b> - f(x) - (mu/2) ||x - anchor||^2   over x in X
    /// ```
    ///
    /// into `out`. This is the only oracle allowed to fail (for example when
    /// an inner subproblem does not admit the expected structure).
    fn smoothed_argmax(
        &self,
        lambda: &[f64],
        anchor: &[f64],
        mu: f64,
        out: &mut [f64],
    ) -> Result<(), OracleError>;

    /// Objective value f(x).
    fn objective(&self, x: &[f64]) -> f64;

    /// Diameter of the feasible set X (an upper bound on ||x - y|| over X).
    fn diameter(&self) -> f64;

    /// Upper bound M on |f(x)| over X, used to pick the default initial
    /// target accuracy.
    fn objective_bound(&self) -> f64;

    /// Whether x lies in X (up to a small numerical slack chosen by the
    /// implementation).
    fn is_feasible(&self, x: &[f64]) -> bool;

    /// Starting primal point, used as the stage-0 average and as the
    /// normalization point for relative-error reporting.
    fn initial_point(&self) -> Vec<f64>;
}
