//! The twisted groups H¹(X; Z/2) ×_tw H³(X; K₀(D)), the bundle groups H⁰ ⊕ Ê¹ and the graded
//! Brauer groups built from them.
//!
//! For a complex of dimension at most 4 the coefficient group E¹_D(X) is computed as
//! H³(X; K₀(D)), and its torsion part stands in for Tor Ē¹_D(X).

mod axioms;
mod groups;
mod structure;

pub use axioms::{check_group_axioms, AxiomFailure, AxiomReport, GroupLaw};
pub use groups::{
    brauer_group, bundle_group, clifford_bundle_invariants, BrauerElement, BrauerGroup, BundleGroup, BundleGroupElement,
};
pub use structure::{build_twisted_group, TwistedElement, TwistedGroupStructure};

use crate::cohomology::CohomologyError;
use crate::ssa::SsaError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TwistedError {
    #[error("complex has dimension {dimension}; at most 4 is supported")]
    DimensionTooLarge { dimension: usize },
    #[error(transparent)]
    Ssa(#[from] SsaError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error("element does not belong to this structure: {0}")]
    StructureMismatch(String),
    #[error("{0} is not stably finite")]
    NotStablyFinite(String),
    #[error("cocycle table invariant violated: {0}")]
    TableInvariant(String),
}
