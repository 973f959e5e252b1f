use num_complex::Complex64;

use crate::crt::division::require_nonconstant;
use crate::error::{Error, Result};
use crate::jets::{Jet, JetOracle};
use crate::scalar::{FactoredPoly, Poly};

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Calls `visit` with every `u ∈ N^parts` such that `|u| = total`.
fn for_each_composition(total: usize, parts: usize, visit: &mut dyn FnMut(&[usize])) {
    fn rec(left: usize, slot: usize, u: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if slot + 1 == u.len() {
            u[slot] = left;
            visit(u);
            return;
        }
        for v in 0..=left {
            u[slot] = v;
            rec(left - v, slot + 1, u, visit);
        }
    }
    if parts == 0 {
        if total == 0 {
            visit(&[]);
        }
        return;
    }
    let mut u = vec![0; parts];
    rec(total, 0, &mut u, visit);
}

/// Coefficient of `(X - a)^k` in `DL_a^{μ_a-1}((X - a)^{μ_a} / D)`, by the
/// closed multi-index sum
///
/// `c_{a,k} = (-1)^k Σ_{|u|=k} Π_b binom(μ_b - 1 + u_b, μ_b - 1) (a - b)^{-(μ_b + u_b)}`
///
/// over the other roots `b`, divided by the leading coefficient of `D`.
pub fn coeff_c_ak(a: Complex64, k: usize, d: &FactoredPoly) -> Result<Complex64> {
    let mu_a = d.multiplicity_of(a).ok_or(Error::NotARoot { point: a })?;
    if k >= mu_a {
        return Err(Error::InvalidInput(format!(
            "k = {k} must be below the multiplicity {mu_a}"
        )));
    }
    let others: Vec<(Complex64, usize)> = d
        .factors()
        .iter()
        .filter(|f| f.root != a)
        .map(|f| (a - f.root, f.mult))
        .collect();
    let mut sum = Complex64::new(0.0, 0.0);
    for_each_composition(k, others.len(), &mut |u| {
        let term = others
            .iter()
            .zip(u)
            .fold(Complex64::new(1.0, 0.0), |acc, (&(diff, mu_b), &u_b)| {
                acc * binomial(mu_b - 1 + u_b, mu_b - 1) / diff.powi((mu_b + u_b) as i32)
            });
        sum += term;
    });
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sum * sign / d.leading())
}

/// Remainder of `f` by `D` assembled from the closed-form `c_{a,k}`:
///
/// `R = Σ_a [Σ_{k+n<μ_a} c_{a,k} f^{(n)}(a)/n! (X-a)^{k+n}] · D / (X-a)^{μ_a}`.
///
/// An independent route to [`taylor_gauss_remainder`](super::taylor_gauss_remainder):
/// no jet inversion is involved.
pub fn remainder_via_cak<F: JetOracle + ?Sized>(f: &F, d: &FactoredPoly) -> Result<Poly> {
    require_nonconstant(d)?;
    let mut acc = Poly::zero();
    for (i, fac) in d.factors().iter().enumerate() {
        let c: Vec<Complex64> = (0..fac.mult)
            .map(|k| coeff_c_ak(fac.root, k, d))
            .collect::<Result<_>>()?;
        let local = f.jet_at(fac.root, fac.mult - 1)?.mul(&Jet::new(fac.root, c))?;
        let cofactor = d.monic_cofactor(i).scale(d.leading());
        acc = &acc + &(&local.to_poly() * &cofactor);
    }
    Ok(acc)
}
