//! Euclidean division of analytic germs by complex polynomials.
//!
//! The remainder of the division of a germ `f` by `D = c Π (X - a)^{μ_a}`
//! is assembled from local data only: at each root `a`, the order `μ_a - 1`
//! jet of `f · (X - a)^{μ_a} / D`, multiplied back by `D / (X - a)^{μ_a}`.
//! Everything else in this crate is a consequence of that one formula:
//!
//! * [`crt`]: division, partial fractions, quotients by coefficient
//!   reversal, Hermite interpolation and its inverse, Newton interpolation;
//! * [`matrixfun`]: `f(A) := R(A)` for any annihilating polynomial, and the
//!   matrix exponential;
//! * [`dynamics`]: linear recurrences and constant-coefficient linear ODEs.

pub mod crt;
pub mod dynamics;
pub mod encoding;
pub mod error;
pub mod jets;
pub mod matrixfun;
pub mod scalar;

pub use error::{Error, Result};
pub use jets::{ExpGerm, Jet, JetOracle, PrincipalPart, RationalGerm};
pub use scalar::{companion_matrix, find_roots, Complex64, ComplexMatrix, FactoredPoly, Poly};
