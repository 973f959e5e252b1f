use crate::crt::division::{assemble, cofactor_inverse, require_nonconstant};
use crate::error::{Error, Result};
use crate::jets::Jet;
use crate::scalar::{FactoredPoly, Poly};

/// `u : C[X]/(D) → Π C[X]/(X - a_i)^{m_i}`: the residue of `P` modulo each
/// `(X - a_i)^{m_i}`, as a jet of order `m_i - 1` at `a_i`.
pub fn crt_project(p: &Poly, d: &FactoredPoly) -> Vec<Jet> {
    d.factors()
        .iter()
        .map(|f| Jet::of_poly(p, f.root, f.mult - 1))
        .collect()
}

/// `v : Π C[X]/(X - a_i)^{m_i} → C[X]/(D)`, the inverse of [`crt_project`]:
///
/// `(P_i) ↦ Σ_i DL_{a_i}^{m_i-1}(P_i / D_i) D_i mod D`, `D_i = D / (X - a_i)^{m_i}`.
///
/// Residues are matched to the roots of `D` in order; each must be centered
/// at its root with order `m_i - 1`. The result is the unique polynomial of
/// degree below `deg D` with the prescribed Hermite data.
pub fn crt_lift(residues: &[Jet], d: &FactoredPoly) -> Result<Poly> {
    require_nonconstant(d)?;
    if residues.len() != d.factors().len() {
        return Err(Error::ResidueMismatch(format!(
            "{} residues for {} roots",
            residues.len(),
            d.factors().len()
        )));
    }
    let mut locals = Vec::with_capacity(residues.len());
    for (i, (res, fac)) in residues.iter().zip(d.factors()).enumerate() {
        if res.center() != fac.root || res.order() + 1 != fac.mult {
            return Err(Error::ResidueMismatch(format!(
                "residue {i} has center {} and order {}, root is {} with multiplicity {}",
                res.center(),
                res.order(),
                fac.root,
                fac.mult
            )));
        }
        // D_i = c M_i; the constant c cancels between the two factors.
        let (_, inv) = cofactor_inverse(d, i)?;
        locals.push(res.mul(&inv)?);
    }
    assemble(d, &locals).rem(&d.expand())
}
