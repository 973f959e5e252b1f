use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jets::Jet;
use crate::scalar::Poly;

/// A germ family that can produce its development at any center to any
/// order.
///
/// Implementations must be coherent: truncating `jet_at(a, μ)` to order
/// `ν ≤ μ` gives `jet_at(a, ν)`, and the jets of sums and products are the
/// truncated sums and products of jets. Families whose local expansions are
/// unrelated across centers are not supported.
pub trait JetOracle: Send + Sync {
    /// Order `order` development at `center`.
    fn jet_at(&self, center: Complex64, order: usize) -> Result<Jet>;

    /// The polynomial this germ stands for, when it is one.
    fn as_poly(&self) -> Option<&Poly> {
        None
    }
}

impl JetOracle for Poly {
    fn jet_at(&self, center: Complex64, order: usize) -> Result<Jet> {
        Ok(Jet::of_poly(self, center, order))
    }

    fn as_poly(&self) -> Option<&Poly> {
        Some(self)
    }
}

impl<T: JetOracle + ?Sized> JetOracle for &T {
    fn jet_at(&self, center: Complex64, order: usize) -> Result<Jet> {
        (**self).jet_at(center, order)
    }

    fn as_poly(&self) -> Option<&Poly> {
        (**self).as_poly()
    }
}

impl<T: JetOracle + ?Sized> JetOracle for Box<T> {
    fn jet_at(&self, center: Complex64, order: usize) -> Result<Jet> {
        (**self).jet_at(center, order)
    }

    fn as_poly(&self) -> Option<&Poly> {
        (**self).as_poly()
    }
}

/// The rational fraction `num / den`, defined away from the zeros of `den`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalGerm {
    num: Poly,
    den: Poly,
}

impl RationalGerm {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(RationalGerm { num, den })
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }
}

impl JetOracle for RationalGerm {
    fn jet_at(&self, center: Complex64, order: usize) -> Result<Jet> {
        let inv = Jet::of_poly(&self.den, center, order)
            .invert()
            .map_err(|_| Error::NotDefinedAt { center })?;
        Jet::of_poly(&self.num, center, order).mul(&inv)
    }
}

/// `e^{tX}` for a real parameter `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpGerm {
    pub t: f64,
}

impl ExpGerm {
    pub fn new(t: f64) -> Self {
        ExpGerm { t }
    }
}

impl JetOracle for ExpGerm {
    fn jet_at(&self, center: Complex64, order: usize) -> Result<Jet> {
        Ok(Jet::exp(self.t, center, order))
    }
}

/// Pointwise product of two germs.
#[derive(Debug, Clone, PartialEq)]
pub struct GermProduct<F, G>(pub F, pub G);

impl<F: JetOracle, G: JetOracle> JetOracle for GermProduct<F, G> {
    fn jet_at(&self, center: Complex64, order: usize) -> Result<Jet> {
        self.0.jet_at(center, order)?.mul(&self.1.jet_at(center, order)?)
    }
}

/// Pointwise sum of two germs.
#[derive(Debug, Clone, PartialEq)]
pub struct GermSum<F, G>(pub F, pub G);

impl<F: JetOracle, G: JetOracle> JetOracle for GermSum<F, G> {
    fn jet_at(&self, center: Complex64, order: usize) -> Result<Jet> {
        self.0.jet_at(center, order)?.add(&self.1.jet_at(center, order)?)
    }
}
