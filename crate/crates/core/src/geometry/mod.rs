//! Exact linear algebra and convex polytopes over the rationals.

mod matrix;
mod polytope;
mod vector;

use thiserror::Error;

pub use matrix::QMatrix;
pub use polytope::{contains, convex_hull, cut, squared_distance, Facet, Halfspace, Polytope};
pub use vector::QVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("no input points")]
    EmptyInput,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("affine rank {0} is not supported (at most 3)")]
    UnsupportedRank(usize),
    #[error("halfspace normal must be nonzero")]
    ZeroNormal,
}
