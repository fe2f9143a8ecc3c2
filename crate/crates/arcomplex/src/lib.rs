//! Computing with isotopy classes of arcs and simple closed curves on
//! punctured surfaces.
//!
//! The crate is organized around a fixed base ideal triangulation per
//! surface. Arcs are anchored as edges of triangulations reached by flips;
//! curves are integer normal-coordinate vectors. Everything else (the
//! disjointness graphs, finite balls of the arc complex, curve complex and
//! arc-and-curve complex, vertex-type classifiers, and the path rewriting
//! that compares the curve complex with the arc-and-curve complex) is built
//! on those two representations.
//!
//! Module map:
//! * [`surface`] — surface parameters and special-case dispatch.
//! * [`triangulation`] — ideal triangulations as combinatorial maps, flips,
//!   canonical codes, and regular-neighborhood boundaries.
//! * [`registry`] — flip-graph enumeration and the arc inventory.
//! * [`strands`] — normal position of curve/arc systems inside a
//!   triangulation (shared machinery for transport and overlays).
//! * [`coords`] — curve and arc classes, coordinate transport.
//! * [`intersect`] — geometric intersection numbers and the overlay oracle.
//! * [`complex`] — finite simplicial balls, links, cliques, automorphisms.
//! * [`classify`] — topological and combinatorial vertex-type classifiers.
//! * [`quasi`] — paths, rewriting, Farey models and inequality reports.

pub mod classify;
pub mod complex;
pub mod coords;
pub mod error;
pub mod intersect;
pub mod quasi;
pub mod registry;
pub mod strands;
pub mod surface;
pub mod triangulation;

pub use error::Error;
pub use surface::{SpecialCase, Surface};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Tunable budgets for the exhaustive searches.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct Limits {
    /// Maximum number of triangulations a flip-ball search may register.
    pub max_registry_nodes: usize,
    /// Maximum strands of a single class crossing one edge in an overlay.
    pub max_strands_per_edge: u32,
    /// Maximum number of per-edge interleavings enumerated by the overlay
    /// oracle before it falls back to the canonical interleaving.
    pub max_interleavings: u64,
    /// Maximum number of maximal cliques reported per enumeration.
    pub max_cliques: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_registry_nodes: 200_000,
            max_strands_per_edge: 12,
            max_interleavings: 4096,
            max_cliques: 1_000_000,
        }
    }
}
