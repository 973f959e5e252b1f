//! Linear recurrences `D(Δ) y = f` and linear ODEs `D(d/dt) y = f`, solved
//! through the remainders of `X^t` and `e^{tX}` by `D`, and the Euler
//! formula for `y' + h(t, A) y = f`.

mod euler;
mod exppoly;
mod ode;
mod quadrature;
mod recurrence;

pub use euler::{euler_solve, EulerOptions};
pub use exppoly::{beta_exp_integral, convolution, ExpPolyFunction, ExpPolyTerm};
pub use ode::{
    exp_poly_basis, g_continuous, ode_residual_check, ode_solve_collet, ode_solve_collet_grid, ColletOptions,
    ColletSolver, ConvolutionMethod, Forcing, ForcingFn, OdeProblem, SampledForcing, UniformGrid,
};
pub use quadrature::{integrate, integrate_vec, QuadratureOptions};
pub use recurrence::{g_discrete, recurrence_solve, RecurrenceProblem};
