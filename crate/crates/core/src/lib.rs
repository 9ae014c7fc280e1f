//! Exact Maslov-type index iteration for symplectic normal forms, enhanced
//! common index jump tuples, and Morse counting for closed geodesics on
//! manifolds with rational cohomology `T_{d,n+1}(x)`.

pub mod cijt;
pub mod error;
pub mod exact;
pub mod index_iteration;
pub mod loop_homology;
pub mod morse;
pub mod normal_forms;

pub use error::{Error, Result};
pub use exact::{ExactInt, ExactScalar, LatticeClass, RotationAngle, SurdSum};

/// Arbitrary-precision backend.
pub type Scalar = ExactScalar<num_bigint::BigInt>;
pub type Rational = num_rational::Ratio<num_bigint::BigInt>;
pub type MeanIndex = SurdSum<num_bigint::BigInt>;
/// Fixed-width backend; panics on overflow.
pub type Scalar128 = ExactScalar<i128>;
