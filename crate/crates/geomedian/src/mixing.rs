use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::GeoError;
use crate::graph::NetworkGraph;

/// Symmetric doubly stochastic mixing matrix conforming to a communication
/// graph: entry (i, j) is nonzero only for j = i or j a neighbor of i.
/// Off-diagonal weights are stored aligned with the graph's sorted neighbor
/// lists, so iterating a row visits neighbors in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct MixingMatrix {
    n: usize,
    neighbors: Vec<Vec<usize>>,
    weights: Vec<Vec<f64>>,
    diag: Vec<f64>,
}

/// Metropolis-Hastings weights:
///
/// ```text
/// w_ij = 1 / (1 + max(deg_i, deg_j))   for neighbors j != i,
/// w_ii = 1 - sum_{j != i} w_ij,
/// ```
///
/// with degrees counted without self-loops. The result is symmetric (the
/// two directions of an edge evaluate the identical expression, so equality
/// is exact in floating point), doubly stochastic, and has strictly
/// positive diagonal.
pub fn metropolis_hastings(graph: &NetworkGraph) -> MixingMatrix {
    let n = graph.num_nodes();
    let mut neighbors = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let mut diag = Vec::with_capacity(n);
    for i in 0..n {
        let nbrs = graph.neighbors(i).to_vec();
        let mut row = Vec::with_capacity(nbrs.len());
        let mut off_sum = 0.0;
        for &j in &nbrs {
            let w = 1.0 / (1.0 + graph.degree(i).max(graph.degree(j)) as f64);
            row.push(w);
            off_sum += w;
        }
        diag.push(1.0 - off_sum);
        neighbors.push(nbrs);
        weights.push(row);
    }
    MixingMatrix {
        n,
        neighbors,
        weights,
        diag,
    }
}

impl MixingMatrix {
    pub fn num_nodes(&self) -> usize {
        self.n
    }

    /// Sorted non-self neighbors of i.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    /// Off-diagonal weights of row i, aligned with `neighbors(i)`.
    pub fn weights(&self, i: usize) -> &[f64] {
        &self.weights[i]
    }

    pub fn self_weight(&self, i: usize) -> f64 {
        self.diag[i]
    }

    /// Entry (i, j), zero when j is neither i nor a neighbor.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return self.diag[i];
        }
        match self.neighbors[i].binary_search(&j) {
            Ok(pos) => self.weights[i][pos],
            Err(_) => 0.0,
        }
    }

    /// Dense n x n row-major copy, for cross-checks against generic linear
    /// algebra.
    pub fn to_dense(&self) -> Vec<f64> {
        let mut dense = vec![0.0; self.n * self.n];
        for i in 0..self.n {
            dense[i * self.n + i] = self.diag[i];
            for (pos, &j) in self.neighbors[i].iter().enumerate() {
                dense[i * self.n + j] = self.weights[i][pos];
            }
        }
        dense
    }

    /// y = W x for scalar per-node values (length n).
    pub fn apply(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.n);
        debug_assert_eq!(out.len(), self.n);
        for i in 0..self.n {
            let mut acc = self.diag[i] * x[i];
            for (pos, &j) in self.neighbors[i].iter().enumerate() {
                acc += self.weights[i][pos] * x[j];
            }
            out[i] = acc;
        }
    }

    /// Second-largest eigenvalue modulus: the spectral norm of
    /// W - (1/n) 1 1^T, computed by power iteration on its square.
    /// Strictly below 1 for a connected graph with positive diagonal.
    pub fn slem(&self) -> Result<f64, GeoError> {
        let n = self.n;
        let mut v = deterministic_unit_vector(n, 0x5e11);
        let mut w = vec![0.0; n];
        let apply_b = |matrix: &Self, x: &[f64], out: &mut [f64]| {
            matrix.apply(x, out);
            let mean = x.iter().sum::<f64>() / n as f64;
            for o in out.iter_mut() {
                *o -= mean;
            }
        };

        let max_iter = 20_000;
        let mut estimate = 0.0_f64;
        for iter in 0..max_iter {
            apply_b(self, &v, &mut w);
            let tmp = v.clone();
            apply_b(self, &w, &mut v);
            // v now holds B^2 applied to the previous v (in tmp).
            let norm = l2(&v);
            if norm < 1e-300 {
                // B annihilated the vector: no component outside consensus.
                return Ok(0.0);
            }
            let rayleigh = dot(&tmp, &v).abs();
            for value in v.iter_mut() {
                *value /= norm;
            }
            let next = rayleigh.sqrt();
            if iter > 0 && (next - estimate).abs() <= 1e-13 * next.max(1e-3) {
                return Ok(next);
            }
            estimate = next;
        }
        Err(GeoError::PowerIterationStalled(max_iter))
    }
}

/// Reproducible pseudo-random start vector for power iterations, normalized.
pub(crate) fn deterministic_unit_vector(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let norm = l2(&v);
    for value in v.iter_mut() {
        *value /= norm;
    }
    v
}

fn l2(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
