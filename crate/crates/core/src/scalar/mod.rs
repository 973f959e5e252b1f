//! Complex scalars, dense polynomials, root finding and companion matrices.

mod factored;
mod matrix;
mod poly;
mod roots;

pub use factored::{Factor, FactoredPoly};
pub use matrix::{companion_matrix, ComplexMatrix};
pub use poly::{Poly, CANONICAL_RTOL};
pub use roots::{find_roots, DEFAULT_CLUSTER_TOL, MAX_ITERATIONS};

pub use num_complex::Complex64;

/// Shorthand for a real number as a complex scalar.
pub fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}
