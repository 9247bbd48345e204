use solver_core::l2_distance;

/// Solves the per-agent subproblem in closed form:
///
/// ```text
/// minimize  ||x - point|| + (mu/2) ||x - center||^2
/// subject to ||x - point|| <= radius.
/// ```
///
/// Writing dist = ||point - center||, the minimizer is
///
/// ```text
/// dist <= 1/mu            : point                     (norm term dominates)
/// 1/mu < dist <= 1/mu + radius : point - (dist - 1/mu) u  (interior stationarity)
/// otherwise               : point - radius u          (ball boundary)
/// ```
///
/// with u = (point - center) / dist. Total on valid inputs (mu > 0,
/// radius > 0, matching dimensions); radius may be infinite, which drops
/// the ball constraint.
pub fn prox_block(center: &[f64], point: &[f64], mu: f64, radius: f64, out: &mut [f64]) {
    assert!(mu > 0.0, "prox_block needs mu > 0, got {mu}");
    assert!(radius > 0.0, "prox_block needs radius > 0, got {radius}");
    assert_eq!(center.len(), point.len());
    assert_eq!(center.len(), out.len());

    let dist = l2_distance(point, center);
    let threshold = 1.0 / mu;
    if dist <= threshold {
        out.copy_from_slice(point);
        return;
    }
    let pull = if dist <= threshold + radius {
        dist - threshold
    } else {
        radius
    };
    let scale = pull / dist;
    for k in 0..out.len() {
        out[k] = point[k] - scale * (point[k] - center[k]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prox(center: &[f64], point: &[f64], mu: f64, radius: f64) -> Vec<f64> {
        let mut out = vec![0.0; point.len()];
        prox_block(center, point, mu, radius, &mut out);
        out
    }

    #[test]
    fn near_center_returns_the_point() {
        // dist = 0.5 <= 1/mu = 1: the norm term wins outright.
        let x = prox(&[0.5, 0.0], &[0.0, 0.0], 1.0, 10.0);
        assert_eq!(x, vec![0.0, 0.0]);
    }

    #[test]
    fn boundary_of_first_case_is_continuous() {
        // dist exactly 1/mu falls in the first case; the second case's
        // formula gives pull = 0, the same point.
        let x = prox(&[1.0, 0.0], &[0.0, 0.0], 1.0, 10.0);
        assert_eq!(x, vec![0.0, 0.0]);
        let x = prox(&[1.0 + 1e-12, 0.0], &[0.0, 0.0], 1.0, 10.0);
        assert!((x[0] - 0.0).abs() < 1e-11);
    }

    #[test]
    fn intermediate_case_moves_by_dist_minus_threshold() {
        // center (3,0), point (0,0), mu = 1, radius 5:
        // dist 3, pull 2, step toward center: x = (2, 0).
        let x = prox(&[3.0, 0.0], &[0.0, 0.0], 1.0, 5.0);
        assert!((x[0] - 2.0).abs() < 1e-15);
        assert_eq!(x[1], 0.0);
        // Stationarity: subgradient (x-point)/||x-point|| + mu (x-center) = 0.
        let g = 1.0 + 1.0 * (2.0 - 3.0);
        assert_eq!(g, 0.0);
    }

    #[test]
    fn far_case_clips_to_ball_radius() {
        // Same geometry with radius 1: pull capped at 1, x = (1, 0).
        let x = prox(&[3.0, 0.0], &[0.0, 0.0], 1.0, 1.0);
        assert!((x[0] - 1.0).abs() < 1e-15);
        // Exactly on the ball boundary.
        assert!((x[0].hypot(x[1]) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn radius_boundary_between_cases() {
        // dist = 1/mu + radius exactly: both formulas give pull = radius.
        let x = prox(&[2.0, 0.0], &[0.0, 0.0], 1.0, 1.0);
        assert!((x[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn infinite_radius_is_unconstrained_shrinkage() {
        let x = prox(&[10.0, 0.0], &[0.0, 0.0], 0.5, f64::INFINITY);
        // dist 10, threshold 2, pull 8: x = (8, 0).
        assert!((x[0] - 8.0).abs() < 1e-12);
    }

    #[test]
    fn output_is_always_feasible_and_improves_objective() {
        // A coarse sweep of geometries; feasibility and objective
        // improvement over both endpoints must hold everywhere.
        let objective = |x: &[f64], center: &[f64], point: &[f64], mu: f64| {
            let dist_p: f64 = x.iter().zip(point).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
            let dist_c: f64 = x.iter().zip(center).map(|(a, b)| (a - b) * (a - b)).sum::<f64>();
            dist_p + mu / 2.0 * dist_c
        };
        for &mu in &[0.1, 1.0, 10.0] {
            for &radius in &[0.5, 2.0, 100.0] {
                for &shift in &[0.1, 1.0, 3.0, 50.0] {
                    let center = vec![shift, -shift * 0.5, shift * 2.0];
                    let point = vec![0.0, 1.0, -1.0];
                    let x = prox(&center, &point, mu, radius);
                    let dist_from_point: f64 = x
                        .iter()
                        .zip(&point)
                        .map(|(a, b)| (a - b) * (a - b))
                        .sum::<f64>()
                        .sqrt();
                    assert!(dist_from_point <= radius * (1.0 + 1e-12));
                    let at_x = objective(&x, &center, &point, mu);
                    assert!(at_x <= objective(&point, &center, &point, mu) + 1e-12);
                }
            }
        }
    }
}
