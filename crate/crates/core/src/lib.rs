//! Exact twisted Coxeter combinatorics.
//!
//! The crate builds crystallographic root systems with exact integer and
//! rational data, the twisted Coxeter calculus attached to a triple
//! `(sigma, c, mu)` (the fixed point `e`, the integral subsystem `Phi_e`, and
//! the subsequence splitting `c sigma = c_I sigma_I`), the side conditions on
//! `q` and on `c`, exhaustive checkers for the Weyl-group lemmas that feed the
//! orthogonality argument, and the transporter count
//! `#{w in W_e^F : w(chi) = chi'}`.
//!
//! Linear algebra is generic over [`scalar::ExactField`]; the aliases below
//! fix the scalar used throughout the sweeps.

pub mod conditions;
pub mod error;
pub mod linalg;
pub mod multiplicity;
pub mod rootsys;
pub mod scalar;
pub mod smith;
pub mod twisted;
pub mod verifier;

pub use error::{Error, Result};

/// Default exact scalar.
pub type Rational = scalar::Rational;
/// Arbitrary-precision exact scalar.
pub type BigRational = scalar::BigRational;
/// Rational vectors in the simple-coroot basis.
pub type CoweightQ = Vec<Rational>;
/// Integral coweights in fundamental-coweight coordinates.
pub type CoweightZ = Vec<i64>;
/// Rational matrices.
pub type MatrixQ = linalg::Matrix<Rational>;
/// Integer matrices.
pub type MatrixZ = linalg::Matrix<i64>;
