//! Oriented trivalent-graph diagrams of surface ribbons and their moves.

mod canon;
pub mod catalog;
mod diagram;
mod moves;

pub use canon::{canonical_form, is_isomorphic, CanonicalForm};
pub use catalog::{
    all_movepairs, braid_closure, catalog_diagram, movepair, CatalogEntry, CatalogError, MovePair,
    CATALOG_NAMES, MOVEPAIRS_PER_KIND,
};
pub use diagram::{
    components, validate_diagram, Crossing, DiagramError, Dir, End, Endpoint, Endpoints,
    RibbonDiagram, Role, Slot, Vertex,
};
pub use moves::{
    apply_move, reverse_arc_orientation, riii_sites, Direction, MoveKind, MoveOutcome, MoveSite,
};
