//! Cochains, differentials, cocycle conditions and second cohomology.

pub mod cochain;
pub mod delta;
pub mod predicates;
pub mod quotient;
pub mod space;

pub use cochain::{Cochain1, Cochain2, Cochain3, GroupCochain1, GroupCochain2, RackCochain1, RackCochain2};
pub use delta::{delta_group, delta_group1, delta_group2, delta_rack, delta_rack1, delta_rack2, AnyCochain, DeltaImage};
pub use predicates::{
    additive, check_property, eta_derived, eta_derived_phi, eta_formula, fibrant, group_cocycle,
    normalized, phi_hat, pre_additive, rack_cocycle, symmetric, Check, DerivationError, PhiHat,
    Property, PropertyKind, Witness,
};
pub use quotient::{cohomology_group, CoboundaryMode, CohomologyGroup};
pub use space::{cocycle_space, cocycle_space_exhaustive, satisfies, CocycleSpace, CocycleValue, Flavor, EXHAUSTIVE_LIMIT};
