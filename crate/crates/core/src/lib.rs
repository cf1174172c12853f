//! Combinatorics of simple-normal-crossing configurations.
//!
//! The crate models SNC configurations as stratum posets, builds their dual
//! quasicomplexes, tracks how blow-ups transform them, and computes rational
//! homology and weight-filtration graded dimensions from the Mayer–Vietoris
//! spectral sequence. Everything is exact: integers are arbitrary precision and
//! linear algebra is done over ℚ.

pub mod complex;
pub mod error;
pub mod homology;
pub mod linalg;
pub mod snc;
pub mod weight;

/// Arbitrary-precision integers used for boundary matrices.
pub type Int = num_bigint::BigInt;
/// Exact rationals used for restriction maps and spectral sequence pages.
pub type Rational = num_rational::BigRational;

pub use complex::{
    euler_characteristic, join_cone, link, star, stellar_subdivide, validate_complex, ComplexDoc, QuasiComplex,
    Simplex, VertexId,
};
pub use homology::{betti, boundary_matrices, BettiVector, BoundaryMatrix};
pub use error::{Error, Result, ValidationReport, Violation};
