//! Round-based message-passing simulation of the homotopy solver.
//!
//! The accelerated dual ascent decomposes over the network: each agent owns
//! its multiplier block, its prox anchor block, and its slice of the primal
//! average, and every quantity it updates depends only on its own state and
//! on blocks received from direct neighbors. This crate executes that
//! protocol literally. Each iteration is two synchronous message phases:
//!
//! 1. agents form their tentative multiplier blocks locally, exchange them
//!    with neighbors, and solve the local prox in closed form;
//! 2. agents exchange the resulting primal blocks and take the dual step
//!    from the locally assembled constraint residual.
//!
//! Locality is enforced by construction: the per-agent step functions in
//! [`agent`] receive exactly (own static data, own mutable state), and all
//! foreign information arrives through the inbox, which the driver fills
//! only along graph edges.
//!
//! The simulated run is not approximately but exactly the centralized
//! solver: both paths accumulate neighbor differences with the same shared
//! kernel in the same ascending-neighbor order and apply identically shaped
//! update expressions, so traces agree bitwise, not merely to rounding.
//! Agents are stepped sequentially (the conformance mode); the two-phase
//! barrier structure would admit parallel stepping within a phase, since
//! phases read only the previous phase's snapshots.

mod agent;
mod driver;
mod error;
mod message;

pub use agent::{argmax_step, dual_step, hat_step, AgentLocal, AgentState};
pub use driver::{run_distributed, run_distributed_logged, DistributedOutcome};
pub use error::SimError;
pub use message::{MessageLog, MessageLogRow, Phase, RoundMessage};
