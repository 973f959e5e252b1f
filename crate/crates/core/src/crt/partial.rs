use num_complex::Complex64;

use crate::crt::division::{cofactor_inverse, require_nonconstant};
use crate::error::{Error, Result};
use crate::jets::{Jet, PrincipalPart};
use crate::scalar::{FactoredPoly, Poly};

/// `P / D` as a polynomial part plus one principal part per distinct pole.
#[derive(Debug, Clone, PartialEq)]
pub struct PFDecomposition {
    pub polynomial_part: Poly,
    pub parts: Vec<PrincipalPart>,
}

impl PFDecomposition {
    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.polynomial_part.eval(x) + self.parts.iter().map(|p| p.eval(x)).sum::<Complex64>()
    }
}

/// Partial fraction decomposition of `P / D`.
///
/// At a pole `a` of multiplicity `μ`, the principal part is
/// `DL_a^{μ-1}(g (X-a)^μ) (X-a)^{-μ}` with `g = P / D`; the coefficient of
/// `(X-a)^n` in the jet becomes the coefficient of `(X-a)^{n-μ}`. The
/// polynomial part is the classical quotient of `P` by `D`.
pub fn partial_fractions(p: &Poly, d: &FactoredPoly) -> Result<PFDecomposition> {
    require_nonconstant(d)?;
    let c_inv = d.leading().inv();
    let mut parts = Vec::with_capacity(d.factors().len());
    for (i, fac) in d.factors().iter().enumerate() {
        let (_, inv) = cofactor_inverse(d, i)?;
        let local = Jet::of_poly(p, fac.root, fac.mult - 1).mul(&inv)?.scale(c_inv);
        // d_k multiplies (X-a)^{-k}; it is the jet coefficient of degree μ - k.
        let coeffs = (1..=fac.mult).map(|k| local.coeffs()[fac.mult - k]).collect();
        parts.push(PrincipalPart::new(fac.root, coeffs));
    }
    let (polynomial_part, _) = p.divrem(&d.expand())?;
    Ok(PFDecomposition { polynomial_part, parts })
}

/// Quotient of the division of `P` by `D` read off a power series at 0.
///
/// With `q = deg P - deg D`, the order `q` jet at 0 of `rev(P) / rev(D)`
/// (coefficient reversal to the respective degrees) carries the
/// coefficients of the quotient in reversed order.
pub fn serret_quotient(p: &Poly, d: &Poly) -> Result<Poly> {
    let dn = d.degree().ok_or(Error::ZeroDivisor)?;
    let pn = match p.degree() {
        Some(pn) if pn >= dn => pn,
        _ => return Err(Error::QuotientIsZero),
    };
    let q = pn - dn;
    let inv = Jet::of_poly(&d.reversed(dn), Complex64::new(0.0, 0.0), q).invert()?;
    let series = Jet::of_poly(&p.reversed(pn), Complex64::new(0.0, 0.0), q).mul(&inv)?;
    let mut coeffs = series.coeffs().to_vec();
    coeffs.reverse();
    Ok(Poly::new(coeffs))
}
