use solver_core::l2_norm;

use crate::block::block_of;
use crate::instance::GeoMedianInstance;
use crate::operator::apply_a_flat;

/// Dual objective in closed form. With nu = A^T lambda (= A lambda, A
/// symmetric) and R the ball radius,
///
/// ```text
/// F(lambda) = -<nu, b> + R sum_i (||nu_i|| - 1)+ ,
/// ```
///
/// each block contributing a penalty only where ||nu_i|| exceeds the unit
/// dual ball of the norm objective.
pub fn dual_value(instance: &GeoMedianInstance, lambda: &[f64]) -> f64 {
    let d = instance.dim();
    let mut nu = vec![0.0; lambda.len()];
    apply_a_flat(instance.mixing(), d, lambda, &mut nu);
    let mut value = 0.0;
    for i in 0..instance.num_agents() {
        let nu_i = block_of(&nu, i, d);
        let b_i = instance.point(i);
        let dot: f64 = nu_i.iter().zip(b_i).map(|(a, b)| a * b).sum();
        value -= dot;
        let excess = l2_norm(nu_i) - 1.0;
        if excess > 0.0 {
            value += instance.radius() * excess;
        }
    }
    value
}

/// The dual objective as a function of the reduced variable nu = A^T lambda
/// directly. The range of A^T on a connected graph is the zero-mean
/// subspace {nu : sum_i nu_i = 0}, so any such nu is attained by some
/// lambda, and F(lambda) = G(A^T lambda) pointwise.
pub fn reduced_dual_g(instance: &GeoMedianInstance, nu: &[f64]) -> f64 {
    let d = instance.dim();
    let mut value = 0.0;
    for i in 0..instance.num_agents() {
        let nu_i = block_of(nu, i, d);
        let b_i = instance.point(i);
        let dot: f64 = nu_i.iter().zip(b_i).map(|(a, b)| a * b).sum();
        value -= dot;
        let excess = l2_norm(nu_i) - 1.0;
        if excess > 0.0 {
            value += instance.radius() * excess;
        }
    }
    value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NetworkGraph;

    fn instance() -> GeoMedianInstance {
        let graph = NetworkGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        GeoMedianInstance::new(
            vec![1.0, 0.0, 0.0, 2.0, -1.0, 1.0],
            3,
            2,
            4.0,
            graph,
            0,
            0.5,
        )
        .unwrap()
    }

    #[test]
    fn linear_inside_unit_blocks() {
        // All block norms <= 1: G(nu) = -<nu, b> with no penalty.
        let inst = instance();
        let nu = vec![0.3, 0.4, -0.6, 0.0, 0.3, -0.4];
        let expected = -(0.3 * 1.0 + 0.4 * 0.0 + -0.6 * 0.0 + 0.0 * 2.0 + 0.3 * -1.0 + -0.4 * 1.0);
        assert!((reduced_dual_g(&inst, &nu) - expected).abs() < 1e-15);
    }

    #[test]
    fn penalty_applies_past_unit_norm() {
        // One block of norm 3: penalty R (3 - 1) = 8.
        let inst = instance();
        let nu = vec![3.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        let expected = -3.0 + 4.0 * 2.0;
        assert!((reduced_dual_g(&inst, &nu) - expected).abs() < 1e-15);
    }

    #[test]
    fn dual_value_factors_through_the_operator() {
        let inst = instance();
        let lambda: Vec<f64> = (0..6).map(|k| (k as f64 * 0.9).sin() * 2.0).collect();
        let mut nu = vec![0.0; 6];
        apply_a_flat(inst.mixing(), 2, &lambda, &mut nu);
        let direct = dual_value(&inst, &lambda);
        let via_g = reduced_dual_g(&inst, &nu);
        assert!((direct - via_g).abs() < 1e-15);
        // The image of A is zero-mean by construction.
        for k in 0..2 {
            let col_sum: f64 = (0..3).map(|i| nu[i * 2 + k]).sum();
            assert!(col_sum.abs() < 1e-14);
        }
    }
}
