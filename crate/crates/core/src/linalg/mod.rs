//! Exact linear algebra over Z, Z/2 and Q[i].
//!
//! Everything here is arbitrary precision. Smith normal forms carry both unimodular
//! transforms and their inverses, which the cohomology code uses to move cocycles in and
//! out of diagonal coordinates.

mod abelian;
mod complex_matrix;
mod gaussian;
mod int_matrix;
mod mod2;
mod smith;
mod sparse;

pub use abelian::{
    bigint_from_json, bigint_to_json, cokernel_presentation, is_smooth, reduce_coordinates, strip_primes,
    AbelianPresentation, FgAbelianGroup,
};
pub(crate) use abelian::bigint_list;
pub use complex_matrix::ComplexMatrix;
pub use gaussian::{GaussianRational, ParseGaussianError};
pub use int_matrix::IntMatrix;
pub use mod2::{mod2_rank, mod2_solve};
pub use smith::{smith_normal_form, solve_integer, SmithForm};
pub use sparse::SparseIntMatrix;
