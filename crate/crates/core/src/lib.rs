//! Exact invariants of bundles of strongly self-absorbing C*-algebras over finite simplicial
//! complexes, together with finite-dimensional verification of the graded Clifford algebra
//! identities behind them.
//!
//! All arithmetic is exact: integers and rationals are arbitrary precision, scalars in the
//! Clifford module are Gaussian rationals.

pub mod linalg;
pub mod simplicial;
pub mod ssa;
pub mod clifford;
pub mod cohomology;
pub mod twisted;

pub use cohomology::{cohomology, CoefficientRing, Cochain, CohomologyGroup, LineBundle};
pub use linalg::{ComplexMatrix, FgAbelianGroup, GaussianRational, IntMatrix};
pub use simplicial::{builtin, SimplicialComplex};
pub use ssa::SsaDescriptor;
pub use twisted::{brauer_group, build_twisted_group, bundle_group, TwistedElement, TwistedGroupStructure};
