//! Finite groups, racks, augmented racks and good involutions.

mod augmented;
mod coeff;
pub mod fixtures;
mod group;
mod rack;
mod report;

pub use augmented::{
    conjugation_subrack, conjugation_subrack_of, conjugation_subset, derived_rack_table,
    search_good_involutions, validate_augmented_rack, validate_good_involution, AugmentedData,
    AugmentedRack, ConjClassData,
};
pub use coeff::{Coeff, CoeffGroup};
pub use group::{permutations, validate_group, FiniteGroup, GroupData};
pub use rack::{is_connected, is_quandle, validate_rack, Rack, RackData};
pub use report::{ValidationReport, Violation};
