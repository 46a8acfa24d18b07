//! Exact combinatorics of the arc model of the `d`-cluster category of type A∞.
//!
//! Objects are `d`-admissible arcs of the ∞-gon. The crate computes Hom and
//! Ext dimensions from arc coordinates, validates `(d+2)`-angulations given
//! as a finite core plus periodic or fountain tails, and enumerates their
//! mutations.

pub mod arcs;
pub mod diagram;
pub mod mutation;
pub mod polygon;
pub mod presets;
pub mod quiver;
pub mod tail;

#[cfg(any(test, feature = "oracles"))]
pub mod oracle;

pub use arcs::{admissible_arcs_in_window, crosses, is_admissible, is_overarc, Arc, ArcError, Context};
pub use diagram::{ArcDiagram, Classification, DiagramError, ValidationReport, Witness};
pub use mutation::{enumerate_mutations, find_overarc, mutate, p_sequence, MutationError, MutationOption, PSequence};
pub use polygon::{count_angulations, enumerate_angulations, EdgeSide, PolygonAngulation, PolygonError};
pub use presets::{canonical_fountain, t_ell_diagram, zigzag, PresetError};
pub use quiver::{ext_profile, hom_dim, QuiverObject};
pub use tail::{Direction, Side, TailSpec};
