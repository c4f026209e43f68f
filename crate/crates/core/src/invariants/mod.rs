//! Colorings of ribbon diagrams and the state-sum invariants built on them.

mod coloring;
mod statesum;

use thiserror::Error;

use crate::cohomology::Witness;
use crate::diagrams::DiagramError;
use crate::error::AlgebraError;

pub use coloring::{coloring_count, enumerate_colorings, Coloring};
pub use statesum::{
    crossing_weight, state_sum_phi, state_sum_phi_eta, vertex_weight, Checks, StateSum,
};

#[derive(Debug, Clone, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("hypothesis not met: {0}")]
    Hypothesis(Witness),
    #[error("{0}")]
    Size(String),
}
