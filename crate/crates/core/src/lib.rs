//! Homological invariants of finite-dimensional quiver algebras over exact
//! fields: minimal resolutions, Tor, stable and singularity-category Homs,
//! homological and hereditary ideal certificates, and triangular matrix
//! extensions `[[A, M], [N, k]]` with their vertex-peeling inverse.

pub mod algebra;
pub mod bimodule;
pub mod dsg;
pub mod error;
pub mod extension;
pub mod linalg;
pub mod module;
pub mod quiver;

pub use algebra::{Algebra, AlgebraMorphism, Ideal};
pub use error::{Error, Result};
