use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::Poly;

pub(crate) fn require_monic(d: &Poly) -> Result<usize> {
    match d.degree() {
        None | Some(0) => Err(Error::InvalidInput("D must have degree at least 1".into())),
        Some(q) if d.is_monic() => Ok(q),
        Some(_) => Err(Error::NotMonic),
    }
}

/// `X^t mod D` by square-and-multiply; coefficient `n` is `g_n(t)`.
pub fn g_discrete(t: u64, d: &Poly) -> Result<Poly> {
    let q = require_monic(d)?;
    if t < q as u64 {
        return Ok(Poly::monomial(Complex64::new(1.0, 0.0), t as usize));
    }
    let mut result = Poly::one();
    let mut base = Poly::x().rem(d)?;
    let mut e = t;
    while e > 0 {
        if e & 1 == 1 {
            result = (&result * &base).rem(d)?;
        }
        e >>= 1;
        if e > 0 {
            base = (&base * &base).rem(d)?;
        }
    }
    Ok(result)
}

/// `D(Δ) y = f` with `y_n = c_n` for `n < q`, where `Δ` is the shift
/// `y_k ↦ y_{k+1}`: `Σ_n d_n y_{k+n} = f_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceProblem {
    d: Poly,
    initials: Vec<Complex64>,
    forcing: Vec<Complex64>,
}

impl RecurrenceProblem {
    pub fn new(d: Poly, initials: Vec<Complex64>, forcing: Vec<Complex64>) -> Result<Self> {
        let q = require_monic(&d)?;
        if initials.len() != q {
            return Err(Error::DimensionMismatch(format!(
                "{} initial values for a degree {q} operator",
                initials.len()
            )));
        }
        Ok(RecurrenceProblem { d, initials, forcing })
    }

    pub fn d(&self) -> &Poly {
        &self.d
    }

    pub fn initials(&self) -> &[Complex64] {
        &self.initials
    }

    pub fn forcing(&self) -> &[Complex64] {
        &self.forcing
    }

    pub fn order(&self) -> usize {
        self.initials.len()
    }
}

/// `y_0, ..., y_T` from the closed form
///
/// `y_t = Σ_{n<q} c_n g_n(t) + Σ_{k<t} g_{q-1}(t-1-k) f_k`  for `t ≥ q`.
///
/// `g_{q-1}(s)` vanishes for `s < q - 1`, so `y_T` reads `f_0, ..., f_{T-q}`:
/// the forcing must hold at least `T + 1 - q` terms.
pub fn recurrence_solve(prob: &RecurrenceProblem, horizon: usize) -> Result<Vec<Complex64>> {
    let q = prob.order();
    let needed = (horizon + 1).saturating_sub(q);
    if prob.forcing.len() < needed {
        return Err(Error::InsufficientForcing {
            needed,
            available: prob.forcing.len(),
        });
    }
    let g: Vec<Poly> = (0..=horizon as u64)
        .map(|t| g_discrete(t, &prob.d))
        .collect::<Result<_>>()?;
    let mut y = Vec::with_capacity(horizon + 1);
    for t in 0..=horizon {
        if t < q {
            y.push(prob.initials[t]);
            continue;
        }
        let homogeneous: Complex64 = (0..q).map(|n| prob.initials[n] * g[t].coeff(n)).sum();
        let forced: Complex64 = (0..=t - q).map(|k| g[t - 1 - k].coeff(q - 1) * prob.forcing[k]).sum();
        y.push(homogeneous + forced);
    }
    Ok(y)
}
