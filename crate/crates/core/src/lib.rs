//! Exact combinatorics of dual graphs of nodal curves.
//!
//! - [`graph`]: multigraphs with loops and parallel edges, spanning forests,
//!   edge deletion and subdivision.
//! - [`linalg`]: GF(2) matrices and integer Smith normal form.
//! - [`homology`]: GF(2) chains and cochains, homology bases and the
//!   evaluation pairing `H^1 x H_1 -> Z/2`.
//! - [`cover`]: the double cover classified by a cochain and the
//!   cycle-lifting description of the pairing.
//! - [`twisted`]: twisted-curve models, their two-torsion count and a block
//!   model of the Weil form.
//! - [`tropical`]: Laplacians, critical groups, Dhar reduction and
//!   r-torsion on subdivided graphs.
//! - [`sweep`]: exhaustive checks over all small connected multigraphs.
//!
//! Sweeps run on rayon when the `parallel` feature (on by default) is
//! enabled; without it every [`sweep::Execution`] runs sequentially.

pub mod cover;
pub mod error;
pub mod graph;
pub mod homology;
pub mod linalg;
pub mod sweep;
pub mod tropical;
pub mod twisted;

pub use error::{Error, Result};
