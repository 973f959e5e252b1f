//! The remainder engine and what it yields at the polynomial level.

mod coefficients;
mod division;
mod isomorphism;
mod newton;
mod partial;

pub use coefficients::{coeff_c_ak, remainder_via_cak};
pub(crate) use division::cofactor_inverse;
pub use division::{divrem_generalized, taylor_gauss_remainder, DivisionResult, QUOTIENT_CONSISTENCY_RTOL};
pub use isomorphism::{crt_lift, crt_project};
pub use newton::{
    complete_homogeneous, newton_interpolation, newton_interpolation_germ, universal_remainder_xr, NewtonInterpolant,
};
pub use partial::{partial_fractions, serret_quotient, PFDecomposition};
