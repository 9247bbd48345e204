use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::GeoError;

/// Undirected connected communication graph on n >= 3 nodes. Neighbor lists
/// exclude the node itself and are kept sorted so that every traversal of a
/// neighborhood is deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkGraph {
    n: usize,
    neighbors: Vec<Vec<usize>>,
}

impl NetworkGraph {
    /// Builds a graph from an explicit edge list (self-loops rejected,
    /// duplicates rejected, must be connected).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GeoError> {
        if n < 3 {
            return Err(GeoError::TooFewAgents(n));
        }
        let mut neighbors = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a == b || a >= n || b >= n {
                return Err(GeoError::InvalidEdge(a, b));
            }
            if neighbors[a].contains(&b) {
                return Err(GeoError::DuplicateEdge(a.min(b), a.max(b)));
            }
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        let graph = NetworkGraph { n, neighbors };
        if !graph.is_connected() {
            return Err(GeoError::Disconnected);
        }
        Ok(graph)
    }

    /// Generates a random connected graph: a uniform random attachment tree
    /// on a shuffled node order first (guaranteeing connectivity), then the
    /// remaining edge budget drawn uniformly from the absent pairs.
    ///
    /// The edge budget is floor(ratio * n(n+1)/2), clamped to the complete
    /// graph; a budget below n - 1 cannot be connected and is an error.
    pub fn generate(n: usize, ratio: f64, seed: u64) -> Result<Self, GeoError> {
        if n < 3 {
            return Err(GeoError::TooFewAgents(n));
        }
        if !(0.0..=1.0).contains(&ratio) {
            return Err(GeoError::InvalidParameter(format!(
                "connectivity ratio must lie in [0, 1], got {ratio}"
            )));
        }
        let target = (ratio * (n * (n + 1)) as f64 / 2.0).floor() as usize;
        if target < n - 1 {
            return Err(GeoError::RatioTooSparse {
                ratio,
                target,
                n,
                min: n - 1,
            });
        }
        let target = target.min(n * (n - 1) / 2);

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);

        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(target);
        let mut present = vec![false; n * n];
        let mark = |edges: &mut Vec<(usize, usize)>, present: &mut Vec<bool>, a: usize, b: usize| {
            edges.push((a, b));
            present[a * n + b] = true;
            present[b * n + a] = true;
        };
        for k in 1..n {
            let parent = order[rng.gen_range(0..k)];
            mark(&mut edges, &mut present, order[k], parent);
        }

        let mut candidates: Vec<(usize, usize)> = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if !present[a * n + b] {
                    candidates.push((a, b));
                }
            }
        }
        let extra = target - (n - 1);
        let picked = rand::seq::index::sample(&mut rng, candidates.len(), extra);
        for idx in picked {
            let (a, b) = candidates[idx];
            mark(&mut edges, &mut present, a, b);
        }

        Self::from_edges(n, &edges)
    }

    pub fn num_nodes(&self) -> usize {
        self.n
    }

    /// Sorted neighbors of i, excluding i itself.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    /// Degree excluding the self-loop.
    pub fn degree(&self, i: usize) -> usize {
        self.neighbors[i].len()
    }

    pub fn contains_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.neighbors[a].binary_search(&b).is_ok()
    }

    /// Number of undirected non-self edges.
    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edge list sorted lexicographically with a < b.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for a in 0..self.n {
            for &b in &self.neighbors[a] {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.neighbors[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generate_meets_exact_edge_budget() {
        // n = 20, ratio 0.15: floor(0.15 * 20 * 21 / 2) = 31 edges.
        let graph = NetworkGraph::generate(20, 0.15, 7).unwrap();
        assert_eq!(graph.edge_count(), 31);
        assert!(graph.is_connected());
    }

    #[test]
    fn generate_is_deterministic_per_seed() {
        let a = NetworkGraph::generate(15, 0.3, 42).unwrap();
        let b = NetworkGraph::generate(15, 0.3, 42).unwrap();
        let c = NetworkGraph::generate(15, 0.3, 43).unwrap();
        assert_eq!(a.edges(), b.edges());
        assert_ne!(a.edges(), c.edges());
    }

    #[test]
    fn generate_rejects_too_sparse_ratio() {
        // n = 20 needs 19 edges; ratio 0.05 gives floor(0.05 * 210) = 10.
        let err = NetworkGraph::generate(20, 0.05, 1).unwrap_err();
        assert!(matches!(err, GeoError::RatioTooSparse { target: 10, .. }));
    }

    #[test]
    fn generate_clamps_to_complete_graph() {
        // ratio 1 asks for floor(n(n+1)/2) edges, more than the n(n-1)/2
        // that exist; the result is the complete graph.
        let graph = NetworkGraph::generate(6, 1.0, 3).unwrap();
        assert_eq!(graph.edge_count(), 15);
        for i in 0..6 {
            assert_eq!(graph.degree(i), 5);
        }
    }

    #[test]
    fn spanning_tree_budget_is_accepted() {
        // Smallest admissible budget: exactly n - 1 edges, a tree.
        // n = 10: need ratio with floor(ratio * 55) = 9.
        let graph = NetworkGraph::generate(10, 9.0 / 55.0 + 1e-12, 5).unwrap();
        assert_eq!(graph.edge_count(), 9);
        assert!(graph.is_connected());
    }

    #[test]
    fn from_edges_validates() {
        assert!(matches!(
            NetworkGraph::from_edges(2, &[(0, 1)]),
            Err(GeoError::TooFewAgents(2))
        ));
        assert!(matches!(
            NetworkGraph::from_edges(3, &[(0, 0), (0, 1), (1, 2)]),
            Err(GeoError::InvalidEdge(0, 0))
        ));
        assert!(matches!(
            NetworkGraph::from_edges(3, &[(0, 1), (1, 0), (1, 2)]),
            Err(GeoError::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            NetworkGraph::from_edges(4, &[(0, 1), (2, 3)]),
            Err(GeoError::Disconnected)
        ));
        assert!(matches!(
            NetworkGraph::from_edges(3, &[(0, 1), (1, 5)]),
            Err(GeoError::InvalidEdge(1, 5))
        ));
    }

    #[test]
    fn neighbor_lists_are_sorted() {
        let graph = NetworkGraph::from_edges(4, &[(2, 0), (3, 1), (1, 0), (3, 0)]).unwrap();
        assert_eq!(graph.neighbors(0), &[1, 2, 3]);
        assert_eq!(graph.neighbors(3), &[0, 1]);
        assert!(graph.contains_edge(0, 2));
        assert!(!graph.contains_edge(1, 2));
        assert_eq!(graph.edges(), vec![(0, 1), (0, 2), (0, 3), (1, 3)]);
    }
}
