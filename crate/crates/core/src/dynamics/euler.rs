use num_complex::Complex64;

use crate::dynamics::exppoly::ExpPolyFunction;
use crate::dynamics::quadrature::{integrate_vec, QuadratureOptions};
use crate::error::{Error, Result};
use crate::matrixfun::{matrix_exp_with, Tolerances};
use crate::scalar::ComplexMatrix;

/// Tolerances of [`euler_solve`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EulerOptions {
    pub matrix: Tolerances,
    pub quadrature: QuadratureOptions,
}

/// Solves `y' + h(t, A) y = f(t)`, `y(0) = y_0`, with
/// `h(t, A) = Σ_j h_j(t) A^j`, by the Euler formula
///
/// `y(t) = exp(∫_t^0 h(u, A) du) y_0 + ∫_0^t exp(∫_t^v h(u, A) du) f(v) dv`.
///
/// `∫_t^v h(u, A) du = Σ_j (H_j(v) - H_j(t)) A^j` is assembled as a matrix
/// from the antiderivatives `H_j`; each exponential goes through
/// [`matrix_exp_with`], which computes the minimal polynomial of that
/// matrix. The outer integral is adaptive quadrature. `f` has one exp-poly
/// component per row of `A`.
pub fn euler_solve(
    hcoeffs: &[ExpPolyFunction],
    a: &ComplexMatrix,
    y0: &[Complex64],
    f: &[ExpPolyFunction],
    t: f64,
    opts: EulerOptions,
) -> Result<Vec<Complex64>> {
    let q = a.order();
    if y0.len() != q || f.len() != q {
        return Err(Error::DimensionMismatch(format!(
            "matrix of order {q} with {} initial values and {} forcing components",
            y0.len(),
            f.len()
        )));
    }
    if !t.is_finite() {
        return Err(Error::InvalidInput("t must be finite".into()));
    }
    let anti: Vec<ExpPolyFunction> = hcoeffs.iter().map(|h| h.antiderivative()).collect();
    let mut powers = vec![ComplexMatrix::identity(q)];
    for j in 1..anti.len() {
        powers.push(&powers[j - 1] * a);
    }
    let at_t: Vec<Complex64> = anti.iter().map(|h| h.eval(t)).collect();
    let propagator = |v: f64| -> Result<ComplexMatrix> {
        let mut m = ComplexMatrix::zeros(q);
        for ((h, ht), p) in anti.iter().zip(&at_t).zip(&powers) {
            m = &m + &p.scale(h.eval(v) - ht);
        }
        matrix_exp_with(1.0, &m, opts.matrix)
    };
    let mut y = propagator(0.0)?.mul_vec(y0);
    if f.iter().any(|c| !c.is_zero()) {
        let forced = integrate_vec(
            |v| {
                let fv: Vec<Complex64> = f.iter().map(|c| c.eval(v)).collect();
                Ok(propagator(v)?.mul_vec(&fv))
            },
            0.0,
            t,
            q,
            opts.quadrature,
        )?;
        for (yi, gi) in y.iter_mut().zip(forced) {
            *yi += gi;
        }
    }
    Ok(y)
}
