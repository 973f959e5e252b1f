//! Matrix functions defined by `f(A) := R(A)`, where `R` is the remainder of
//! the division of the germ `f` by a polynomial annihilating `A`.
//!
//! The result does not depend on which annihilator is used; the minimal
//! polynomial is the default because it keeps `deg R` smallest. Minimal
//! polynomials are obtained from the characteristic polynomial by lowering
//! multiplicities while the product `Π (A - aI)^{m_a}` still vanishes to
//! within the tolerance.
//!
//! Eigenvalues that are close but unequal make the remainder numerically
//! delicate. The [`AnnihilatorCertificate`] records the annihilator that was
//! used and its residual so callers can detect this; there is no fallback
//! algorithm.

use num_complex::Complex64;

use crate::crt::taylor_gauss_remainder;
use crate::error::{Error, Result};
use crate::jets::{ExpGerm, JetOracle};
use crate::scalar::{find_roots, ComplexMatrix, FactoredPoly, Poly, DEFAULT_CLUSTER_TOL};

/// Default relative tolerance of annihilation checks.
pub const DEFAULT_ANNIHILATION_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative residual allowed for `D(A) = 0`.
    pub annihilation: f64,
    /// Root clustering tolerance passed to [`find_roots`].
    pub cluster: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            annihilation: DEFAULT_ANNIHILATION_TOL,
            cluster: DEFAULT_CLUSTER_TOL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnnihilatorKind {
    Minimal,
    Characteristic,
    UserSupplied,
}

impl AnnihilatorKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            AnnihilatorKind::Minimal => "minimal",
            AnnihilatorKind::Characteristic => "characteristic",
            AnnihilatorKind::UserSupplied => "user-supplied",
        }
    }
}

/// A monic polynomial annihilating a matrix, with the evidence.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnihilatorCertificate {
    pub poly: Poly,
    pub factored: FactoredPoly,
    pub kind: AnnihilatorKind,
    /// Frobenius norm of the annihilator applied to the matrix.
    pub residual_norm: f64,
    /// Absolute threshold the residual was checked against.
    pub tolerance: f64,
}

/// Which annihilating polynomial [`matrix_function`] divides by.
#[derive(Debug, Clone, PartialEq)]
pub enum Annihilator {
    Minimal,
    Characteristic,
    Expanded(Poly),
    Factored(FactoredPoly),
}

/// Horner evaluation of `P(A)`; the zero polynomial gives the zero matrix.
pub fn poly_apply(p: &Poly, a: &ComplexMatrix) -> ComplexMatrix {
    let q = a.order();
    p.coeffs()
        .iter()
        .rev()
        .fold(ComplexMatrix::zeros(q), |acc, &c| (&acc * a).shifted(c))
}

/// Characteristic polynomial `det(XI - A)` by the Faddeev–LeVerrier trace
/// recursion.
pub fn characteristic_polynomial(a: &ComplexMatrix) -> Poly {
    let n = a.order();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    coeffs[n] = Complex64::new(1.0, 0.0);
    let mut m = ComplexMatrix::zeros(n);
    for k in 1..=n {
        m = (a * &m).shifted(coeffs[n - k + 1]);
        let am = a * &m;
        coeffs[n - k] = -am.trace() / k as f64;
    }
    Poly::new(coeffs)
}

/// `‖Π (A - aI)^{m_a}‖_F` and the scale `Π (‖A‖_F + |a|)^{m_a}` it is
/// compared against.
fn product_residual(a: &ComplexMatrix, factors: &[(Complex64, usize)]) -> (f64, f64) {
    let norm = a.frobenius_norm();
    let mut prod = ComplexMatrix::identity(a.order());
    let mut scale = 1.0;
    for &(root, mult) in factors {
        let shifted = a.shifted(-root);
        for _ in 0..mult {
            prod = &prod * &shifted;
            scale *= norm + root.norm();
        }
    }
    (prod.frobenius_norm(), scale)
}

fn certificate_from_factors(
    a: &ComplexMatrix,
    factors: Vec<(Complex64, usize)>,
    kind: AnnihilatorKind,
    tol: f64,
) -> Result<AnnihilatorCertificate> {
    let (residual, scale) = product_residual(a, &factors);
    let tolerance = tol * scale;
    if residual > tolerance {
        return Err(Error::AnnihilationFailed { residual, tolerance });
    }
    let factored = FactoredPoly::monic(factors)?;
    Ok(AnnihilatorCertificate {
        poly: factored.expand(),
        factored,
        kind,
        residual_norm: residual,
        tolerance,
    })
}

/// Minimal polynomial of `A`.
///
/// Roots and multiplicities of the characteristic polynomial come from
/// [`find_roots`]; each multiplicity is then lowered one step at a time
/// while the annihilation residual stays within `tol` (relative to
/// `Π (‖A‖_F + |a|)^{m_a}`).
pub fn minimal_polynomial(a: &ComplexMatrix, tol: Tolerances) -> Result<AnnihilatorCertificate> {
    let charpoly = characteristic_polynomial(a);
    let fp = find_roots(&charpoly, tol.cluster)?;
    let mut factors: Vec<(Complex64, usize)> = fp.factors().iter().map(|f| (f.root, f.mult)).collect();
    let (residual, scale) = product_residual(a, &factors);
    if residual > tol.annihilation * scale {
        return Err(Error::AnnihilationFailed {
            residual,
            tolerance: tol.annihilation * scale,
        });
    }
    for i in 0..factors.len() {
        while factors[i].1 > 1 {
            factors[i].1 -= 1;
            let (residual, scale) = product_residual(a, &factors);
            if residual > tol.annihilation * scale {
                factors[i].1 += 1;
                break;
            }
        }
    }
    certificate_from_factors(a, factors, AnnihilatorKind::Minimal, tol.annihilation)
}

/// Certificate for the requested annihilator of `A`.
pub fn annihilator_certificate(
    a: &ComplexMatrix,
    which: &Annihilator,
    tol: Tolerances,
) -> Result<AnnihilatorCertificate> {
    match which {
        Annihilator::Minimal => minimal_polynomial(a, tol),
        Annihilator::Characteristic => {
            let fp = find_roots(&characteristic_polynomial(a), tol.cluster)?;
            let factors = fp.factors().iter().map(|f| (f.root, f.mult)).collect();
            certificate_from_factors(a, factors, AnnihilatorKind::Characteristic, tol.annihilation)
        }
        Annihilator::Expanded(p) => {
            let norm = a.frobenius_norm();
            let residual = poly_apply(p, a).frobenius_norm();
            let scale = p.coeffs().iter().rev().fold(0.0, |acc, c| acc * norm + c.norm());
            let tolerance = tol.annihilation * scale;
            if residual > tolerance {
                return Err(Error::AnnihilationFailed { residual, tolerance });
            }
            let fp = find_roots(p, tol.cluster)?;
            let factored = FactoredPoly::monic(fp.factors().iter().map(|f| (f.root, f.mult)))?;
            Ok(AnnihilatorCertificate {
                poly: factored.expand(),
                factored,
                kind: AnnihilatorKind::UserSupplied,
                residual_norm: residual,
                tolerance,
            })
        }
        Annihilator::Factored(fp) => {
            let factors = fp.factors().iter().map(|f| (f.root, f.mult)).collect();
            certificate_from_factors(a, factors, AnnihilatorKind::UserSupplied, tol.annihilation)
        }
    }
}

/// `f(A) = R(A)` with `R` the remainder of `f` by the certified annihilator.
pub fn matrix_function_with<F: JetOracle + ?Sized>(
    f: &F,
    a: &ComplexMatrix,
    cert: &AnnihilatorCertificate,
) -> Result<ComplexMatrix> {
    let r = taylor_gauss_remainder(f, &cert.factored)?;
    Ok(poly_apply(&r, a))
}

/// `f(A) := R(A)`.
pub fn matrix_function<F: JetOracle + ?Sized>(
    f: &F,
    a: &ComplexMatrix,
    which: &Annihilator,
    tol: Tolerances,
) -> Result<ComplexMatrix> {
    let cert = annihilator_certificate(a, which, tol)?;
    matrix_function_with(f, a, &cert)
}

/// `e^{tA}`, the exponential germ at parameter `t` applied to `A`.
/// `t = 0` returns the identity without any numerics.
pub fn matrix_exp(t: f64, a: &ComplexMatrix) -> Result<ComplexMatrix> {
    matrix_exp_with(t, a, Tolerances::default())
}

pub fn matrix_exp_with(t: f64, a: &ComplexMatrix, tol: Tolerances) -> Result<ComplexMatrix> {
    if t == 0.0 {
        return Ok(ComplexMatrix::identity(a.order()));
    }
    matrix_function(&ExpGerm::new(t), a, &Annihilator::Minimal, tol)
}

/// `t ↦ e^{tA}` with the minimal polynomial of `A` computed once.
#[derive(Debug, Clone)]
pub struct ExpOperator {
    matrix: ComplexMatrix,
    cert: AnnihilatorCertificate,
}

impl ExpOperator {
    pub fn new(a: &ComplexMatrix, tol: Tolerances) -> Result<Self> {
        Ok(ExpOperator {
            matrix: a.clone(),
            cert: minimal_polynomial(a, tol)?,
        })
    }

    pub fn certificate(&self) -> &AnnihilatorCertificate {
        &self.cert
    }

    pub fn at(&self, t: f64) -> Result<ComplexMatrix> {
        if t == 0.0 {
            return Ok(ComplexMatrix::identity(self.matrix.order()));
        }
        matrix_function_with(&ExpGerm::new(t), &self.matrix, &self.cert)
    }
}
