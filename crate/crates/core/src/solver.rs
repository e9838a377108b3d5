//! Hitting-set solvers: greedy, uniform fractional checks and exact search.

mod exact;
mod fractional;
mod greedy;
mod symmetry;

use thiserror::Error;

pub use exact::{
    disjoint_edge_lower_bound, exact_min_hitting_set, Budget, SolveOutcome, SolveStatus,
};
pub use fractional::{uniform_fractional_check, FractionalAssignment, Ratio};
pub use greedy::{greedy_cover, greedy_guarantee, GreedyTrace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("edge {0} has no members and cannot be hit")]
    EmptyEdge(usize),
    #[error("budget must be positive")]
    ZeroBudget,
    #[error("symmetry generator {0} is not a permutation mapping edges to edges")]
    InvalidSymmetry(usize),
}
