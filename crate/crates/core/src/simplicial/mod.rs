//! Finite simplicial complexes, coboundaries, products and a catalog of test spaces.

mod catalog;
mod complex;
pub mod construct;
mod product;

pub use catalog::{builtin, catalog_names};
pub use complex::{BoundaryRing, RawComplex, Simplex, SimplexIndex, SimplicialComplex};
pub use product::product_complex;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimplicialError {
    #[error("malformed simplex {0:?}: vertices must be nonempty and strictly increasing")]
    MalformedTuple(Vec<usize>),
    #[error("duplicate simplex {0:?}")]
    DuplicateSimplex(Vec<usize>),
    #[error("vertex {vertex} out of range for a complex with {n_vertices} vertices")]
    VertexOutOfRange { vertex: usize, n_vertices: usize },
    #[error("degree {degree} out of range for a complex of dimension {dimension}")]
    DegreeOutOfRange { degree: usize, dimension: usize },
    #[error("unknown catalog space `{0}`")]
    UnknownName(String),
    #[error("invalid complex JSON: {0}")]
    Json(String),
}
