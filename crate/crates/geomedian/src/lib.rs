//! Distributed geometric-median problem on a message-passing network.
//!
//! n agents on a connected graph each hold a point b_i and jointly minimize
//! sum_i ||x_i - b_i|| subject to consensus, encoded as A x = 0 for the
//! block Laplacian A of a Metropolis-Hastings mixing matrix. This crate
//! provides the graph and mixing machinery, the matrix-free constraint
//! operator, the closed-form block prox and dual, a Weiszfeld reference
//! solver, and the [`solver_core::ConstrainedProblem`] implementation that
//! plugs the problem into the homotopy solver.

mod block;
mod dual;
mod error;
mod graph;
mod instance;
mod io;
mod mixing;
mod operator;
mod prox;
mod weiszfeld;

pub use block::{block_of, block_of_mut, BlockVector};
pub use dual::{dual_value, reduced_dual_g};
pub use error::GeoError;
pub use graph::NetworkGraph;
pub use instance::{
    prox_center, smoothed_argmax_geo, stream_seed, GeoMedianInstance, GeoMedianProblem,
};
pub use io::{instance_from_json, instance_to_json, load_instance, save_instance};
pub use mixing::{metropolis_hastings, MixingMatrix};
pub use operator::{apply_a, apply_a_flat, sigma_max_ata, weighted_diff_accum};
pub use prox::prox_block;
pub use weiszfeld::{weiszfeld, WeiszfeldResult};
