//! Finite augmented racks, their second cohomology, extensions, and state-sum
//! invariants of surface ribbons given as trivalent-graph diagrams.

pub mod algebra;
pub mod cli;
pub mod cohomology;
pub mod diagrams;
pub mod extensions;
pub mod invariants;
pub mod io;
pub mod error;
pub mod linalg;

pub use algebra::{AugmentedRack, Coeff, CoeffGroup, FiniteGroup, Rack};
pub use error::{AlgebraError, StructuralError};
pub use linalg::{IntScalar, Matrix, SmithForm};

pub type IntMatrix = Matrix<i64>;
pub type WideMatrix = Matrix<i128>;
pub type SmithForm64 = SmithForm<i64>;
