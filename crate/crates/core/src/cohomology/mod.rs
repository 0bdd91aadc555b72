//! Simplicial cohomology with Z, F2 and Z_P coefficients, cup products and Bocksteins.

mod bundles;
mod cochain;
mod group;
mod reduction;
mod ring;

pub use bundles::{line_bundle_tensor, whitney_classes, LineBundle, WhitneyClasses};
pub use cochain::{bockstein, coboundary, coefficient_map, cup, is_cocycle, Cochain};
pub use group::{class_coordinates, cohomology, cohomology_all, torsion_subgroup, CohomologyGroup, TorsionSubgroup};
pub use ring::CoefficientRing;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohomologyError {
    #[error("degree {degree} out of range for a complex of dimension {dimension}")]
    DegreeOutOfRange { degree: usize, dimension: usize },
    #[error("expected a cochain of degree {expected}, got degree {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("expected {expected} values, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("cochain of degree {degree} is not a cocycle")]
    NotACocycle { degree: usize },
    #[error("coefficient rings {left} and {right} do not match")]
    RingMismatch { left: String, right: String },
    #[error("no coefficient map from {from} to {to}")]
    UnsupportedRingPair { from: String, to: String },
    #[error("value {value} is not an element of {ring}")]
    InvalidValue { value: String, ring: String },
    #[error("invalid coefficient ring: {0}")]
    InvalidRing(String),
    #[error("class has a nonzero free component")]
    NotTorsion,
}
