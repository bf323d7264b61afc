//! Exact computer algebra for finite-dimensional quiver algebras and their
//! bounded homotopy categories of projectives: modules as quiver
//! representations, perfect complexes, silting mutation, spherical twists,
//! and automorphism-invariance bookkeeping.
//!
//! Everything is computed over an exact field: arbitrary-precision rationals
//! by default, or a prime field `F_p` as a fast mode (trusted for radical
//! and dimension computations only when `p` exceeds the dimensions in play).
//! All operations are deterministic given their inputs and, where a seed is
//! involved, the seed.
//!
//! See the `examples/` directory for a runnable tour of each capability and
//! the `silt` binary for the command-line surface.

pub mod algebra;
pub mod complex;
pub mod error;
pub mod families;
pub mod field;
pub mod mat;
pub mod module;
pub mod quiver;
pub mod trivext;

pub use algebra::{AlgElem, Algebra, AlgebraAutomorphism};
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use mat::Mat;
pub use quiver::{Arrow, Path, Quiver, Relation};
