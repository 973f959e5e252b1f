use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jets::{Jet, JetOracle};
use crate::scalar::{FactoredPoly, Poly};

/// Relative size of `(f - R) mod D` tolerated when recovering a quotient.
pub const QUOTIENT_CONSISTENCY_RTOL: f64 = 1e-9;

/// Remainder, and the quotient when the dividend is a polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct DivisionResult {
    pub remainder: Poly,
    pub quotient: Option<Poly>,
}

/// Local data at the root with index `i`: the monic cofactor
/// `M_a = Π_{b≠a} (X - b)^{μ_b}` and the inverse of its jet at `a` to order
/// `μ_a - 1`.
///
/// The jet of `M_a` is built from the factors `(a - b) + (X - a)` rather
/// than from the expanded cofactor, whose Taylor coefficients at `a` lose
/// relative accuracy to cancellation when another root is close.
pub(crate) fn cofactor_inverse(d: &FactoredPoly, i: usize) -> Result<(Poly, Jet)> {
    let f = d.factors()[i];
    let order = f.mult - 1;
    let mut jet = Jet::unit(f.root, order);
    for (j, other) in d.factors().iter().enumerate() {
        if j == i {
            continue;
        }
        let mut linear = vec![Complex64::new(0.0, 0.0); order + 1];
        linear[0] = f.root - other.root;
        if order > 0 {
            linear[1] = Complex64::new(1.0, 0.0);
        }
        let linear = Jet::new(f.root, linear);
        for _ in 0..other.mult {
            jet = jet.mul(&linear)?;
        }
    }
    Ok((d.monic_cofactor(i), jet.invert()?))
}

pub(crate) fn require_nonconstant(d: &FactoredPoly) -> Result<()> {
    if d.degree() == 0 {
        return Err(Error::ConstantDivisor);
    }
    Ok(())
}

/// Multiplicity-weighted mean of the roots.
pub(crate) fn root_centroid(d: &FactoredPoly) -> Complex64 {
    let total: Complex64 = d.factors().iter().map(|f| f.root * f.mult as f64).sum();
    total / d.degree().max(1) as f64
}

/// `Σ_a local_a(X) · M_a(X)` for jets `local_a` centered at the roots.
///
/// The terms can be much larger than their sum when roots are close, so
/// they are expanded and summed in powers of `Y = X - c`, `c` the root
/// centroid, where their coefficients are smallest, then shifted back.
pub(crate) fn assemble(d: &FactoredPoly, locals: &[Jet]) -> Poly {
    let c = root_centroid(d);
    let shifted = FactoredPoly::new(
        Complex64::new(1.0, 0.0),
        d.factors().iter().map(|f| (f.root - c, f.mult)),
    )
    .expect("shifting preserves a valid factorization");
    let mut acc = Poly::zero();
    for (i, local) in locals.iter().enumerate() {
        let local = Jet::new(local.center() - c, local.coeffs().to_vec());
        acc = &acc + &(&local.to_poly() * &shifted.monic_cofactor(i));
    }
    let n = acc.coeffs().len();
    Poly::new(acc.taylor_coeffs(-c, n))
}

/// Remainder of the euclidean division of the germ `f` by `D`:
///
/// `R = Σ_a DL_a^{μ_a-1}(f (X-a)^{μ_a} / D) · D / (X-a)^{μ_a}`.
///
/// Writing `D = c (X-a)^{μ_a} M_a`, the leading coefficient `c` cancels
/// between the two factors, so each term is computed as
/// `DL_a^{μ_a-1}(f / M_a) · M_a`. Terms are summed in the root order of `D`.
pub fn taylor_gauss_remainder<F: JetOracle + ?Sized>(f: &F, d: &FactoredPoly) -> Result<Poly> {
    require_nonconstant(d)?;
    let mut locals = Vec::with_capacity(d.factors().len());
    for (i, fac) in d.factors().iter().enumerate() {
        let (_, inv) = cofactor_inverse(d, i)?;
        locals.push(f.jet_at(fac.root, fac.mult - 1)?.mul(&inv)?);
    }
    Ok(assemble(d, &locals))
}

/// Generalized euclidean division. The quotient is recovered only for
/// polynomial dividends, as `(f - R) / D` by long division, whose remainder
/// must vanish to within `1e-9` relative.
pub fn divrem_generalized<F: JetOracle + ?Sized>(f: &F, d: &FactoredPoly) -> Result<DivisionResult> {
    let remainder = taylor_gauss_remainder(f, d)?;
    let quotient = match f.as_poly() {
        Some(p) => {
            let (q, r) = (p - &remainder).divrem(&d.expand())?;
            let scale = p.max_abs().max(remainder.max_abs()).max(f64::MIN_POSITIVE);
            let residual = r.max_abs();
            if residual > QUOTIENT_CONSISTENCY_RTOL * scale {
                return Err(Error::InconsistentRemainder { residual });
            }
            Some(q)
        }
        None => None,
    };
    Ok(DivisionResult { remainder, quotient })
}
