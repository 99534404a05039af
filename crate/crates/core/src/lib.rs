//! Exact tree-depth computation.
//!
//! The crate offers three solvers that agree on every connected graph:
//!
//! * [`naive`]: memoized dynamic programming over connected vertex subsets,
//!   `O*(2^n)`.
//! * [`pruned`]: the same recursion restricted to a state space of small
//!   connected sets and components left by deleting small sets
//!   ([`state_space`]).
//! * [`full`]: the pruned recursion combined with branching over guessed
//!   decompositions, each closed by an ordering problem solved through
//!   bipartite matching ([`moid`]). Runs in `O*(1.9602^n)` for `eps = 1/10`.
//!
//! [`oracle`] holds brute-force references used by the test suites.

pub mod cli;
pub mod epsilon;
pub mod error;
pub mod full;
pub mod graph;
pub mod moid;
pub mod naive;
pub mod oracle;
pub mod pruned;
pub mod solve;
pub mod state_space;
pub mod tree;
pub mod vertex_set;

pub use epsilon::{Bound, Epsilon};
pub use error::{Error, Result};
pub use full::{treedepth, treedepth_with, FullConfig, SolveResult, Stats};
pub use graph::{Family, Format, Graph};
pub use solve::{solve, Algorithm, Solution, SolveConfig};
pub use tree::{Forest, LevelSequence, RootedTree};
pub use vertex_set::VertexSet;
