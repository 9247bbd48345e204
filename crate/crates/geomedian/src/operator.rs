use crate::block::BlockVector;
use crate::error::GeoError;
use crate::mixing::{deterministic_unit_vector, MixingMatrix};

/// Accumulates `out += weight * (own - other)` coordinate-wise. Both the
/// centralized operator and the per-agent network simulation build their
/// constraint applications from this one kernel, in the same (ascending
/// neighbor) order, so the two paths produce bitwise identical floats.
#[inline]
pub fn weighted_diff_accum(own: &[f64], other: &[f64], weight: f64, out: &mut [f64]) {
    for k in 0..out.len() {
        out[k] += weight * (own[k] - other[k]);
    }
}

/// Applies the constraint operator to a flat n*d vector:
///
/// ```text
/// (A x)_i = sum_{j in N(i)} w_ij (x_i - x_j),
/// ```
///
/// the block Laplacian of the mixing matrix, equal to ((I - W) o I_d) x.
/// A is symmetric and annihilates consensus vectors exactly (each summand
/// is w * 0), not merely to rounding.
pub fn apply_a_flat(mixing: &MixingMatrix, d: usize, x: &[f64], out: &mut [f64]) {
    let n = mixing.num_nodes();
    debug_assert_eq!(x.len(), n * d);
    debug_assert_eq!(out.len(), n * d);
    out.fill(0.0);
    for i in 0..n {
        let own = &x[i * d..(i + 1) * d];
        let out_i = &mut out[i * d..(i + 1) * d];
        for (pos, &j) in mixing.neighbors(i).iter().enumerate() {
            weighted_diff_accum(own, &x[j * d..(j + 1) * d], mixing.weights(i)[pos], out_i);
        }
    }
}

/// Block-vector wrapper over [`apply_a_flat`].
pub fn apply_a(mixing: &MixingMatrix, x: &BlockVector) -> Result<BlockVector, GeoError> {
    if x.num_blocks() != mixing.num_nodes() {
        return Err(GeoError::DimensionMismatch {
            what: "block vector",
            expected: mixing.num_nodes(),
            actual: x.num_blocks(),
        });
    }
    let mut out = BlockVector::zeros(x.num_blocks(), x.block_dim());
    apply_a_flat(mixing, x.block_dim(), x.as_slice(), out.as_mut_slice());
    Ok(out)
}

/// Largest eigenvalue of A^T A = A^2, computed by power iteration on the
/// composed map v -> A(A v). The blocks of A share one scalar operator
/// (I - W), so iterating on per-node scalars (d = 1) gives the same value
/// as any block dimension. Equals (1 - lambda_min(W))^2.
pub fn sigma_max_ata(mixing: &MixingMatrix) -> Result<f64, GeoError> {
    let n = mixing.num_nodes();
    let mut v = deterministic_unit_vector(n, 0xa7a);
    let mut w = vec![0.0; n];
    let max_iter = 50_000;
    let mut estimate = 0.0_f64;
    for iter in 0..max_iter {
        apply_a_flat(mixing, 1, &v, &mut w);
        let previous = v.clone();
        apply_a_flat(mixing, 1, &w, &mut v);
        let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm < 1e-300 {
            return Ok(0.0);
        }
        let rayleigh = previous
            .iter()
            .zip(&v)
            .map(|(a, b)| a * b)
            .sum::<f64>()
            .abs();
        for value in v.iter_mut() {
            *value /= norm;
        }
        if iter > 0 && (rayleigh - estimate).abs() <= 1e-13 * rayleigh.max(1e-3) {
            return Ok(rayleigh);
        }
        estimate = rayleigh;
    }
    Err(GeoError::PowerIterationStalled(max_iter))
}
