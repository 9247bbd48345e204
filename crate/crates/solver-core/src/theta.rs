use crate::error::SolverError;

/// Advances the acceleration parameter:
///
/// ```text
/// theta_{t+1} = ( sqrt(theta^4 + 4 theta^2) - theta^2 ) / 2
/// ```
///
/// This is the positive root of (1 - u) / u^2 = 1 / theta^2, so the sequence
/// satisfies the telescoping identity (1 - theta_{t+1}) / theta_{t+1}^2 =
/// 1 / theta_t^2 that the averaging weights rely on.
pub fn theta_next(theta: f64) -> Result<f64, SolverError> {
    if !(theta > 0.0 && theta <= 1.0) {
        return Err(SolverError::InvalidTheta(theta));
    }
    let t2 = theta * theta;
    Ok(((t2 * t2 + 4.0 * t2).sqrt() - t2) / 2.0)
}

/// Iterator over theta_0 = 1, theta_1, theta_2, ...
///
/// Starting from 1 the update keeps the value in (0, 1], so iteration never
/// fails; the iterator is infinite.
#[derive(Debug, Clone)]
pub struct ThetaSchedule {
    next: f64,
}

impl ThetaSchedule {
    pub fn new() -> Self {
        ThetaSchedule { next: 1.0 }
    }
}

impl Default for ThetaSchedule {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for ThetaSchedule {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let current = self.next;
        self.next = theta_next(current).expect("theta stays in (0, 1]");
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: solve (1 - u) / u^2 = 1 / theta^2 for u in (0, 1)
    /// by bisection on g(u) = (1 - u) theta^2 - u^2, which is strictly
    /// decreasing in u with g(0) > 0 > g(1).
    fn theta_next_by_bisection(theta: f64) -> f64 {
        let t2 = theta * theta;
        let g = |u: f64| (1.0 - u) * t2 - u * u;
        let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn matches_bisection_oracle() {
        // Frozen oracle outputs: bisection on the defining identity.
        // theta = 1 -> golden-ratio conjugate.
        assert!((theta_next_by_bisection(1.0) - 0.6180339887498949).abs() < 1e-12);
        assert!((theta_next(1.0).unwrap() - 0.6180339887498949).abs() < 1e-12);

        // theta = 0.6180339887: the successor is 0.4558867800...,
        // confirmed by bisection (not 0.4739, which is the successor of
        // theta ~= 0.6534).
        let frozen = 0.4558867800769283;
        assert!((theta_next_by_bisection(0.6180339887) - frozen).abs() < 1e-12);
        assert!((theta_next(0.6180339887).unwrap() - frozen).abs() < 1e-12);

        for &theta in &[1.0, 0.9, 0.5, 0.1, 1e-3, 1e-6] {
            let by_formula = theta_next(theta).unwrap();
            let by_root = theta_next_by_bisection(theta);
            assert!(
                (by_formula - by_root).abs() < 1e-12,
                "theta = {theta}: formula {by_formula} vs root {by_root}"
            );
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(theta_next(0.0).is_err());
        assert!(theta_next(-0.5).is_err());
        assert!(theta_next(1.0 + 1e-9).is_err());
        assert!(theta_next(f64::NAN).is_err());
    }

    #[test]
    fn schedule_starts_at_one() {
        let first: Vec<f64> = ThetaSchedule::new().take(3).collect();
        assert_eq!(first[0], 1.0);
        assert!((first[1] - 0.6180339887498949).abs() < 1e-12);
        assert!((first[2] - 0.4558867801028666).abs() < 1e-12);
    }

    #[test]
    fn long_schedule_respects_identity_and_bound() {
        // 1e5 steps must hold the telescoping identity to 1e-12 relative
        // accuracy and stay below 2 / (t + 2), in well under a second.
        let start = std::time::Instant::now();
        let mut theta = 1.0_f64;
        for t in 0..100_000usize {
            let next = theta_next(theta).unwrap();
            let lhs = (1.0 - next) / (next * next);
            let rhs = 1.0 / (theta * theta);
            assert!(
                (lhs - rhs).abs() <= 1e-12 * rhs.max(1.0),
                "identity broken at t = {t}: lhs {lhs} rhs {rhs}"
            );
            assert!(
                next <= 2.0 / (t as f64 + 3.0) + 1e-15,
                "bound broken at t + 1 = {}: theta {next}",
                t + 1
            );
            theta = next;
        }
        assert!(start.elapsed().as_secs_f64() < 1.0);
    }
}
