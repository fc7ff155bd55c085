//! Bound quiver algebras, two-term silting complexes and their mutation.

pub mod aepsilon;
pub mod algebra;
pub mod borel_schur;
pub mod certificate;
pub mod complex;
pub mod dsl;
pub mod emit;
pub mod error;
pub mod explore;
pub mod fixture;
pub mod homotopy;
pub mod linalg;
pub mod mutation;
pub mod named;
pub mod normalize;
pub mod quiver;
pub mod rewrite;
pub mod scalar;
pub mod transport;

pub use error::{Error, Result};
pub use scalar::{Fp, Rational, Scalar};
