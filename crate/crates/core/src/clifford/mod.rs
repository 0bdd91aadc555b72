//! Exact finite-dimensional graded *-algebras over Q[i]: Clifford and matrix algebras,
//! graded tensor products, verified isomorphisms between them, and the decomposition of
//! graded automorphisms of Cl₂ ⊗ M_k.

mod algebra;
mod cl2;
mod isos;
mod koszul;
mod maps;
mod suite;

pub use algebra::{
    clifford, direct_sum, graded_tensor, matrix_algebra, tensor_elements, AlgebraElement, GradedStarAlgebra,
    InvariantViolation,
};
pub use cl2::{
    cl2_tensor_matrix, decompose_cl2_automorphism, equal_up_to_phase, gaussian_with_norm, normalize_phase,
    random_unitary, sum_of_two_squares, theta, theta_unitary, Cl2AutDecomposition,
};
pub use isos::{
    cl1_splitting, cl2_matrix_model, cl2_matrix_units, cl2_mk_model, graded_flip, inner_automorphism,
    juxtaposition_iso, standard_even_grading, summand_swap, ungrade_inner, ungraded_flip, verify_cl1_splitting,
    SplittingVerdict,
};
pub use koszul::koszul_conjugation_check;
pub use suite::{verification_suite, SuiteCheck};
pub use maps::{check_graded_iso, check_star_iso, tensor_maps, GradedLinearMap, IsoFailure, IsoVerdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliffordError {
    #[error("invalid grading unitary: {0}")]
    InvalidGradingUnitary(String),
    #[error("expected dimension {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("algebra {0} is not trivially graded")]
    NotTriviallyGraded(String),
    #[error("grading is not inner: {0}")]
    GradingNotInner(String),
    #[error("matrix is not unitary")]
    NotUnitary,
    #[error("not a graded automorphism: {0}")]
    NotGradedAutomorphism(String),
}
