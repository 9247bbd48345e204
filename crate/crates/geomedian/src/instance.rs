use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use solver_core::{l2_distance, l2_norm, ConstrainedProblem, OracleError};

use crate::block::block_of;
use crate::error::GeoError;
use crate::graph::NetworkGraph;
use crate::mixing::{metropolis_hastings, MixingMatrix};
use crate::operator::apply_a_flat;
use crate::prox::prox_block;

/// One benchmark instance: n agents on a connected graph, each holding a
/// point b_i in R^d, jointly solving
///
/// ```text
/// minimize sum_i ||x_i - b_i||   subject to   A x = 0,
///                                             ||x_i - b_i|| <= radius,
/// ```
///
/// where A is the block Laplacian of the Metropolis-Hastings mixing matrix,
/// whose null space on connected graphs is exactly the consensus subspace.
#[derive(Debug, Clone)]
pub struct GeoMedianInstance {
    n: usize,
    d: usize,
    points: Vec<f64>,
    radius: f64,
    seed: u64,
    connectivity_ratio: f64,
    graph: NetworkGraph,
    mixing: MixingMatrix,
}

impl GeoMedianInstance {
    /// Assembles an instance from explicit data; the mixing matrix is
    /// derived from the graph.
    pub fn new(
        points: Vec<f64>,
        n: usize,
        d: usize,
        radius: f64,
        graph: NetworkGraph,
        seed: u64,
        connectivity_ratio: f64,
    ) -> Result<Self, GeoError> {
        if graph.num_nodes() != n {
            return Err(GeoError::DimensionMismatch {
                what: "graph size",
                expected: n,
                actual: graph.num_nodes(),
            });
        }
        if points.len() != n * d || d == 0 {
            return Err(GeoError::DimensionMismatch {
                what: "point data",
                expected: n * d,
                actual: points.len(),
            });
        }
        if !points.iter().all(|p| p.is_finite()) {
            return Err(GeoError::InvalidParameter(
                "points must be finite".into(),
            ));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(GeoError::InvalidParameter(format!(
                "ball radius must be positive and finite, got {radius}"
            )));
        }
        let mixing = metropolis_hastings(&graph);
        Ok(GeoMedianInstance {
            n,
            d,
            points,
            radius,
            seed,
            connectivity_ratio,
            graph,
            mixing,
        })
    }

    /// Samples a random instance: a random connected graph at the given
    /// connectivity ratio and points uniform in [low, high]^d. Graph and
    /// data randomness come from separate streams derived from the one
    /// seed, so either can be regenerated independently.
    pub fn generate(
        n: usize,
        d: usize,
        connectivity_ratio: f64,
        radius: f64,
        seed: u64,
        data_range: (f64, f64),
    ) -> Result<Self, GeoError> {
        let (low, high) = data_range;
        if !(low < high) {
            return Err(GeoError::InvalidParameter(format!(
                "data range must satisfy low < high, got [{low}, {high}]"
            )));
        }
        let graph = NetworkGraph::generate(n, connectivity_ratio, stream_seed(seed, "graph"))?;
        let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(seed, "data"));
        let points: Vec<f64> = (0..n * d).map(|_| rng.gen_range(low..high)).collect();
        Self::new(points, n, d, radius, graph, seed, connectivity_ratio)
    }

    pub fn num_agents(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// Data point of agent i.
    pub fn point(&self, i: usize) -> &[f64] {
        block_of(&self.points, i, self.d)
    }

    /// All points, flat row-major. This is also the solver's initial
    /// primal iterate.
    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn connectivity_ratio(&self) -> f64 {
        self.connectivity_ratio
    }

    pub fn graph(&self) -> &NetworkGraph {
        &self.graph
    }

    pub fn mixing(&self) -> &MixingMatrix {
        &self.mixing
    }

    /// Diameter of the feasible set: each block ranges over a ball of
    /// radius `radius`, so ||x - y|| <= 2 radius sqrt(n).
    pub fn feasible_diameter(&self) -> f64 {
        2.0 * self.radius * (self.n as f64).sqrt()
    }

    /// Data quality warnings; none of these stop a run.
    pub fn warnings(&self) -> Vec<String> {
        let mut warnings = Vec::new();
        let mut centroid = vec![0.0; self.d];
        for i in 0..self.n {
            for k in 0..self.d {
                centroid[k] += self.point(i)[k];
            }
        }
        for v in centroid.iter_mut() {
            *v /= self.n as f64;
        }

        let mut near_duplicates = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if l2_distance(self.point(i), self.point(j)) < 1e-9 {
                    near_duplicates += 1;
                }
            }
        }
        if near_duplicates > 0 {
            warnings.push(format!(
                "{near_duplicates} pair(s) of agents hold nearly identical points; \
                 the objective is flat between them"
            ));
        }

        let max_spread = (0..self.n)
            .map(|i| l2_distance(self.point(i), &centroid))
            .fold(0.0_f64, f64::max);
        if max_spread > 0.0 && self.points_collinear() {
            warnings.push(
                "all data points are collinear; the geometric median may be \
                 non-unique"
                    .into(),
            );
        }
        if max_spread == 0.0 {
            warnings.push("all agents hold the same point; the problem is trivial".into());
        } else if self.radius < max_spread {
            warnings.push(format!(
                "ball radius {} is below the point spread {max_spread:.3}; \
                 the consensus constraint may bind against the balls",
                self.radius
            ));
        }
        warnings
    }

    /// True when every point lies on one line (always the case for d = 1).
    /// Non-collinear points are what make the geometric median unique.
    fn points_collinear(&self) -> bool {
        if self.d == 1 || self.n < 3 {
            return true;
        }
        let base = self.point(0);
        let scale = (0..self.n)
            .map(|i| l2_distance(self.point(i), base))
            .fold(0.0_f64, f64::max);
        if scale == 0.0 {
            return true;
        }
        let tol = 1e-9 * scale;
        let mut axis: Option<Vec<f64>> = None;
        for i in 1..self.n {
            let p = self.point(i);
            let diff: Vec<f64> = p.iter().zip(base).map(|(a, b)| a - b).collect();
            let norm = l2_norm(&diff);
            if norm <= tol {
                continue;
            }
            match &axis {
                None => {
                    axis = Some(diff.iter().map(|v| v / norm).collect());
                }
                Some(u) => {
                    let along: f64 = diff.iter().zip(u).map(|(a, b)| a * b).sum();
                    let off2 = diff
                        .iter()
                        .zip(u)
                        .map(|(a, b)| {
                            let r = a - along * b;
                            r * r
                        })
                        .sum::<f64>();
                    if off2.sqrt() > tol {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The consensus optimum: every agent at the geometric median of all
    /// points. Solved by the independent fixed-point iteration, not by the
    /// solver under test.
    pub fn reference_optimum(
        &self,
        tol: f64,
        max_iter: usize,
    ) -> Result<crate::weiszfeld::WeiszfeldResult, GeoError> {
        crate::weiszfeld::weiszfeld(&self.points, self.n, self.d, tol, max_iter)
    }

    /// Stacks a single d-vector n times (consensus embedding).
    pub fn stack_consensus(&self, point: &[f64]) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.n * self.d);
        for _ in 0..self.n {
            out.extend_from_slice(point);
        }
        out
    }

    pub fn problem(&self) -> GeoMedianProblem {
        GeoMedianProblem {
            instance: self.clone(),
        }
    }
}

/// Derives independent named sub-streams from one master seed (FNV-1a over
/// the tag, folded into the seed).
pub fn stream_seed(seed: u64, tag: &str) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for byte in tag.bytes() {
        hash ^= byte as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    seed ^ hash
}

/// Smoothed argmax for the geometric-median problem: with s = A lambda
/// (A symmetric), each block solves an independent prox problem centered at
///
/// ```text
/// a_i = anchor_i - s_i / mu,
/// ```
///
/// handled in closed form by [`prox_block`].
pub fn smoothed_argmax_geo(
    instance: &GeoMedianInstance,
    lambda: &[f64],
    anchor: &[f64],
    mu: f64,
    out: &mut [f64],
) {
    let d = instance.dim();
    let mut s = vec![0.0; lambda.len()];
    apply_a_flat(instance.mixing(), d, lambda, &mut s);
    let mut center = vec![0.0; d];
    for i in 0..instance.num_agents() {
        let s_i = block_of(&s, i, d);
        let anchor_i = block_of(anchor, i, d);
        prox_center(anchor_i, s_i, mu, &mut center);
        prox_block(
            &center,
            instance.point(i),
            mu,
            instance.radius(),
            &mut out[i * d..(i + 1) * d],
        );
    }
}

/// a = anchor - s / mu, the prox center each agent feeds to its block
/// subproblem. One shared kernel so the centralized and simulated paths
/// compute identical floats.
#[inline]
pub fn prox_center(anchor: &[f64], s: &[f64], mu: f64, out: &mut [f64]) {
    for k in 0..out.len() {
        out[k] = anchor[k] - s[k] / mu;
    }
}

/// [`ConstrainedProblem`] view of an instance, pluggable into the solver.
#[derive(Debug, Clone)]
pub struct GeoMedianProblem {
    instance: GeoMedianInstance,
}

impl GeoMedianProblem {
    pub fn instance(&self) -> &GeoMedianInstance {
        &self.instance
    }
}

impl ConstrainedProblem for GeoMedianProblem {
    fn dim_primal(&self) -> usize {
        self.instance.n * self.instance.d
    }

    fn dim_dual(&self) -> usize {
        self.instance.n * self.instance.d
    }

    fn apply_constraint(&self, x: &[f64], out: &mut [f64]) {
        apply_a_flat(self.instance.mixing(), self.instance.d, x, out);
    }

    fn smoothed_argmax(
        &self,
        lambda: &[f64],
        anchor: &[f64],
        mu: f64,
        out: &mut [f64],
    ) -> Result<(), OracleError> {
        smoothed_argmax_geo(&self.instance, lambda, anchor, mu, out);
        Ok(())
    }

    fn objective(&self, x: &[f64]) -> f64 {
        let d = self.instance.d;
        (0..self.instance.n)
            .map(|i| l2_distance(block_of(x, i, d), self.instance.point(i)))
            .sum()
    }

    fn diameter(&self) -> f64 {
        self.instance.feasible_diameter()
    }

    fn objective_bound(&self) -> f64 {
        self.instance.n as f64 * self.instance.radius
    }

    fn is_feasible(&self, x: &[f64]) -> bool {
        let d = self.instance.d;
        let slack = self.instance.radius * (1.0 + 1e-9) + 1e-12;
        (0..self.instance.n).all(|i| l2_distance(block_of(x, i, d), self.instance.point(i)) <= slack)
    }

    fn initial_point(&self) -> Vec<f64> {
        self.instance.points.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_instance() -> GeoMedianInstance {
        let graph = NetworkGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        GeoMedianInstance::new(
            vec![0.0, 0.0, 4.0, 0.0, 0.0, 3.0],
            3,
            2,
            5.0,
            graph,
            0,
            0.5,
        )
        .unwrap()
    }

    #[test]
    fn problem_dimensions_and_constants() {
        let problem = small_instance().problem();
        assert_eq!(problem.dim_primal(), 6);
        assert_eq!(problem.dim_dual(), 6);
        assert_eq!(problem.diameter(), 2.0 * 5.0 * 3.0_f64.sqrt());
        assert_eq!(problem.objective_bound(), 15.0);
        assert_eq!(problem.initial_point(), small_instance().points().to_vec());
    }

    #[test]
    fn objective_and_feasibility() {
        let problem = small_instance().problem();
        let x0 = problem.initial_point();
        assert_eq!(problem.objective(&x0), 0.0);
        assert!(problem.is_feasible(&x0));

        // Move agent 0 to (3, 4): distance 5 = radius, still feasible.
        let mut x = x0.clone();
        x[0] = 3.0;
        x[1] = 4.0;
        assert_eq!(problem.objective(&x), 5.0);
        assert!(problem.is_feasible(&x));
        x[0] = 3.1;
        assert!(!problem.is_feasible(&x));
    }

    #[test]
    fn argmax_at_zero_multiplier_is_anchor_pull() {
        // With lambda = 0 the blocks solve prox at center = anchor.
        let instance = small_instance();
        let anchor = instance.points().to_vec();
        let mut out = vec![0.0; 6];
        smoothed_argmax_geo(&instance, &[0.0; 6], &anchor, 1.0, &mut out);
        // Center = own point: dist 0 <= 1/mu, every block returns its point.
        assert_eq!(out, anchor);
    }

    #[test]
    fn argmax_output_is_always_feasible() {
        let instance = small_instance();
        let problem = instance.problem();
        let lambda: Vec<f64> = (0..6).map(|k| (k as f64 - 2.5) * 40.0).collect();
        let anchor = vec![0.5; 6];
        let mut out = vec![0.0; 6];
        for &mu in &[1e-4, 0.1, 10.0] {
            smoothed_argmax_geo(&instance, &lambda, &anchor, mu, &mut out);
            assert!(problem.is_feasible(&out), "infeasible at mu = {mu}");
        }
    }

    #[test]
    fn generate_is_deterministic_and_streams_are_independent() {
        let a = GeoMedianInstance::generate(8, 3, 0.4, 10.0, 99, (0.0, 10.0)).unwrap();
        let b = GeoMedianInstance::generate(8, 3, 0.4, 10.0, 99, (0.0, 10.0)).unwrap();
        assert_eq!(a.points(), b.points());
        assert_eq!(a.graph().edges(), b.graph().edges());
        let c = GeoMedianInstance::generate(8, 3, 0.4, 10.0, 100, (0.0, 10.0)).unwrap();
        assert_ne!(a.points(), c.points());
        assert!(a.points().iter().all(|&p| (0.0..10.0).contains(&p)));
    }

    #[test]
    fn warnings_flag_duplicates_and_small_radius() {
        let graph = NetworkGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let dup = GeoMedianInstance::new(
            vec![1.0, 1.0, 1.0, 1.0, 5.0, 5.0],
            3,
            2,
            100.0,
            graph.clone(),
            0,
            0.5,
        )
        .unwrap();
        assert!(dup.warnings().iter().any(|w| w.contains("identical")));

        let tight = GeoMedianInstance::new(
            vec![0.0, 0.0, 10.0, 0.0, 5.0, 8.0],
            3,
            2,
            0.5,
            graph,
            0,
            0.5,
        )
        .unwrap();
        assert!(tight.warnings().iter().any(|w| w.contains("radius")));

        assert!(small_instance().warnings().is_empty());
    }

    #[test]
    fn warnings_flag_collinear_data() {
        let graph = NetworkGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        // One-dimensional data is collinear by construction.
        let line_1d =
            GeoMedianInstance::new(vec![0.0, 4.0, 9.0], 3, 1, 20.0, graph.clone(), 0, 0.5)
                .unwrap();
        assert!(line_1d.warnings().iter().any(|w| w.contains("collinear")));

        // Three points on the line y = 2x in the plane.
        let line_2d = GeoMedianInstance::new(
            vec![0.0, 0.0, 1.0, 2.0, 3.0, 6.0],
            3,
            2,
            20.0,
            graph.clone(),
            0,
            0.5,
        )
        .unwrap();
        assert!(line_2d.warnings().iter().any(|w| w.contains("collinear")));

        // Bend one point off the line and the warning goes away.
        let bent = GeoMedianInstance::new(
            vec![0.0, 0.0, 1.0, 2.0, 3.0, 8.0],
            3,
            2,
            20.0,
            graph,
            0,
            0.5,
        )
        .unwrap();
        assert!(!bent.warnings().iter().any(|w| w.contains("collinear")));
    }

    #[test]
    fn invalid_construction_is_rejected() {
        let graph = NetworkGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(GeoMedianInstance::new(vec![0.0; 5], 3, 2, 1.0, graph.clone(), 0, 0.5).is_err());
        assert!(GeoMedianInstance::new(vec![0.0; 6], 3, 2, 0.0, graph.clone(), 0, 0.5).is_err());
        assert!(
            GeoMedianInstance::new(vec![0.0, f64::NAN, 0.0, 0.0, 0.0, 0.0], 3, 2, 1.0, graph, 0, 0.5)
                .is_err()
        );
        assert!(GeoMedianInstance::generate(8, 3, 0.4, 10.0, 0, (5.0, 5.0)).is_err());
    }
}
