//! Swap-based network creation games.
//!
//! Two games share one move: a vertex drops an incident edge and links to a
//! current non-neighbor.
//!
//! * In the **sum** game ([`sse`]) a vertex pays its total hop distance to
//!   every other vertex. [`structure`] checks properties every equilibrium of
//!   this game must satisfy.
//! * In the **local-cost** game ([`local`]) a vertex earns the sum of its
//!   neighbors' degrees. Half the sum of squared degrees is an exact
//!   potential, so the dynamics in [`dynamics`] always converge.
//!
//! [`experiment`] bundles the end-to-end verification suites used by the
//! `swapnet` binary.

pub mod dynamics;
pub mod error;
pub mod exact;
pub mod experiment;
pub mod generate;
pub mod graph;
pub mod io;
pub mod local;
pub mod policy;
pub mod rng;
pub mod sse;
pub mod structure;

pub use error::{Error, Result};
pub use graph::{apply_swap, CostDelta, DistanceMatrix, Extended, Graph, SwapMove, Vertex};
pub use policy::Policy;
