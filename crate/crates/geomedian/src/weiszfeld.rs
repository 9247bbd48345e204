use solver_core::{l2_distance, l2_norm};

use crate::error::GeoError;

#[derive(Debug, Clone)]
pub struct WeiszfeldResult {
    pub point: Vec<f64>,
    pub objective: f64,
    pub iterations: usize,
}

/// Geometric median of n points in R^d by the Weiszfeld fixed-point
/// iteration, with the Vardi-Zhang correction so that iterates landing on
/// (or starting at) a data point neither divide by zero nor stall there:
/// a data point with multiplicity m is optimal exactly when the residual
/// field of the remaining points has norm r <= m, and otherwise the iterate
/// is pushed off the vertex by the factor 1 - m/r.
///
/// Stops when the step shrinks below tol * max(1, ||x||) (first-order
/// stationarity for this iteration); after max_iter steps the error carries
/// the last iterate.
pub fn weiszfeld(
    points: &[f64],
    n: usize,
    d: usize,
    tol: f64,
    max_iter: usize,
) -> Result<WeiszfeldResult, GeoError> {
    if n == 0 || d == 0 {
        return Err(GeoError::InvalidParameter(format!(
            "need n >= 1 and d >= 1, got n = {n}, d = {d}"
        )));
    }
    if points.len() != n * d {
        return Err(GeoError::DimensionMismatch {
            what: "point data",
            expected: n * d,
            actual: points.len(),
        });
    }
    if !(tol > 0.0) || max_iter == 0 {
        return Err(GeoError::InvalidParameter(
            "tolerance must be positive and max_iter at least 1".into(),
        ));
    }

    let block = |j: usize| &points[j * d..(j + 1) * d];
    let objective_at = |x: &[f64]| (0..n).map(|j| l2_distance(x, block(j))).sum::<f64>();

    if n == 1 {
        return Ok(WeiszfeldResult {
            point: block(0).to_vec(),
            objective: 0.0,
            iterations: 0,
        });
    }

    let scale = (0..n)
        .map(|j| l2_norm(block(j)))
        .fold(1.0_f64, f64::max);
    let coincide_tol = 1e-13 * scale;

    // Start at the centroid.
    let mut x = vec![0.0; d];
    for j in 0..n {
        for k in 0..d {
            x[k] += block(j)[k];
        }
    }
    for v in x.iter_mut() {
        *v /= n as f64;
    }

    let mut weighted = vec![0.0; d];
    let mut residual = vec![0.0; d];
    let mut last_step = f64::INFINITY;
    for iter in 1..=max_iter {
        weighted.fill(0.0);
        residual.fill(0.0);
        let mut weight_sum = 0.0;
        let mut multiplicity = 0usize;
        let mut vertex = None;
        for j in 0..n {
            let b = block(j);
            let dist = l2_distance(&x, b);
            if dist <= coincide_tol {
                multiplicity += 1;
                vertex.get_or_insert(j);
                continue;
            }
            let w = 1.0 / dist;
            weight_sum += w;
            for k in 0..d {
                weighted[k] += b[k] * w;
                residual[k] += (b[k] - x[k]) * w;
            }
        }
        if weight_sum == 0.0 {
            // Every point coincides with x: trivially optimal.
            x.copy_from_slice(block(vertex.unwrap()));
            return Ok(WeiszfeldResult {
                objective: objective_at(&x),
                point: x,
                iterations: iter,
            });
        }
        let r = l2_norm(&residual);
        if multiplicity > 0 && r <= multiplicity as f64 + 1e-12 {
            // Vertex optimality: the pull of the other points cannot
            // overcome the m coincident ones. Snap to the vertex.
            x.copy_from_slice(block(vertex.unwrap()));
            return Ok(WeiszfeldResult {
                objective: objective_at(&x),
                point: x,
                iterations: iter,
            });
        }

        let mut step_sq = 0.0;
        if multiplicity == 0 {
            for k in 0..d {
                let next = weighted[k] / weight_sum;
                let delta = next - x[k];
                step_sq += delta * delta;
                x[k] = next;
            }
        } else {
            let beta = multiplicity as f64 / r;
            for k in 0..d {
                let next = (1.0 - beta) * (weighted[k] / weight_sum) + beta * x[k];
                let delta = next - x[k];
                step_sq += delta * delta;
                x[k] = next;
            }
        }
        last_step = step_sq.sqrt();
        if last_step <= tol * l2_norm(&x).max(1.0) {
            return Ok(WeiszfeldResult {
                objective: objective_at(&x),
                point: x,
                iterations: iter,
            });
        }
    }

    Err(GeoError::WeiszfeldStalled {
        iterations: max_iter,
        last_step,
        point: x,
    })
}
