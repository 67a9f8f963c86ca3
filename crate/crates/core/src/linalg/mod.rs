//! Exact linear algebra over `Q` and `F_p`.

mod matrix;
mod scalar;
pub mod sparse;
mod subspace;

pub use matrix::{Matrix, Rref};
pub use scalar::{FieldSpec, Scalar};
pub use sparse::{SparseEchelon, SparseVec};
pub use subspace::{Echelon, Subspace};
