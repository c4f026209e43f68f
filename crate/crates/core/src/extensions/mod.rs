//! Central group extensions, G-rack extensions, simultaneous augmented
//! extensions, and equivalence of extensions.
//!
//! Total spaces are indexed as `x * |A| + a`.

mod augmented;
mod central;
mod equivalence;
mod grack;
mod lift;

pub use augmented::{build_augmented_extension, compatibility_check, AugmentedExtension};
pub use central::{build_central_extension, CentralExtension};
pub use equivalence::{
    augmented_isomorphism, count_classes, equivalence_g_rack, ExtensionWitness, SearchMode, XiClass,
};
pub use grack::{build_g_rack_extension, GRackExtension};
pub use lift::{conjugacy_lift, conjugacy_lift_set, LiftedRack};

use thiserror::Error;

use crate::cohomology::Witness;
use crate::error::AlgebraError;

#[derive(Debug, Clone, Error)]
pub enum ExtensionError {
    #[error("group 2-cochain is not a cocycle: {0}")]
    NotGroupCocycle(Witness),
    #[error("group 2-cocycle is not normalized")]
    NotNormalized,
    #[error("rack 2-cochain rejected: {0}")]
    Hypothesis(Witness),
    #[error("cochain on {found} points, expected {expected}")]
    Size { expected: usize, found: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn check_size(expected: usize, found: usize) -> Result<(), ExtensionError> {
    if expected == found {
        Ok(())
    } else {
        Err(ExtensionError::Size { expected, found })
    }
}

/// `x * |A| + a`.
#[inline]
pub(crate) fn pair_index(x: usize, a: usize, coeff_size: usize) -> usize {
    x * coeff_size + a
}

#[inline]
pub(crate) fn split_index(i: usize, coeff_size: usize) -> (usize, usize) {
    (i / coeff_size, i % coeff_size)
}
