use thiserror::Error;

use crate::algebra::ValidationReport;

/// Shape problems in raw input tables, reported before any axiom is checked.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructuralError {
    #[error("{what}: expected {expected} entries, found {found}")]
    WrongLength {
        what: String,
        expected: usize,
        found: usize,
    },
    #[error("{what}: entry {value} at {position} is out of range 0..{bound}")]
    OutOfRange {
        what: String,
        position: String,
        value: usize,
        bound: usize,
    },
    #[error("{0} must be nonempty")]
    Empty(String),
    #[error("coefficient modulus must be at least 1, found {0}")]
    BadModulus(u64),
}

/// Errors from building or consuming validated algebraic structures.
#[derive(Debug, Clone, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Structural(#[from] StructuralError),
    #[error("axiom check failed: {0}")]
    Axioms(ValidationReport),
    #[error("conjugacy classes of representatives {0} and {1} overlap")]
    OverlappingClasses(usize, usize),
    #[error("subset is not closed under conjugation: {element} conjugated by {by} leaves it")]
    NotConjugationClosed { element: usize, by: usize },
    #[error("operation requires a good involution but none is attached")]
    MissingInvolution,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
