use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::encoding::FactoredWire;
use crate::error::{Error, Result};
use crate::scalar::Poly;

/// One distinct root together with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Factor {
    pub root: Complex64,
    pub mult: usize,
}

/// A polynomial given by its leading coefficient and its roots:
/// `leading * Π (X - root)^mult`.
///
/// Roots are pairwise distinct and sorted by real part, then imaginary part.
/// That order fixes the summation order of every per-root formula.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FactoredWire", into = "FactoredWire")]
pub struct FactoredPoly {
    leading: Complex64,
    factors: Vec<Factor>,
}

impl FactoredPoly {
    /// Exactly equal roots are merged and their multiplicities added.
    pub fn new(leading: Complex64, factors: impl IntoIterator<Item = (Complex64, usize)>) -> Result<Self> {
        if leading.norm() == 0.0 || !leading.is_finite() {
            return Err(Error::InvalidFactorization(
                "leading coefficient must be nonzero".into(),
            ));
        }
        let mut merged: Vec<Factor> = Vec::new();
        for (root, mult) in factors {
            if mult == 0 {
                return Err(Error::InvalidFactorization("multiplicity must be at least 1".into()));
            }
            if !root.is_finite() {
                return Err(Error::InvalidFactorization("root must be finite".into()));
            }
            match merged.iter_mut().find(|f| f.root == root) {
                Some(f) => f.mult += mult,
                None => merged.push(Factor { root, mult }),
            }
        }
        merged.sort_by(|a, b| a.root.re.total_cmp(&b.root.re).then(a.root.im.total_cmp(&b.root.im)));
        Ok(FactoredPoly {
            leading,
            factors: merged,
        })
    }

    /// Monic polynomial with the given roots.
    pub fn monic(factors: impl IntoIterator<Item = (Complex64, usize)>) -> Result<Self> {
        Self::new(Complex64::new(1.0, 0.0), factors)
    }

    pub fn leading(&self) -> Complex64 {
        self.leading
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|f| f.mult).sum()
    }

    pub fn multiplicity_of(&self, a: Complex64) -> Option<usize> {
        self.factors.iter().find(|f| f.root == a).map(|f| f.mult)
    }

    /// Expanded product `c · Π (X - a)^μ`.
    pub fn expand(&self) -> Poly {
        let mut acc = Poly::constant(self.leading);
        for f in &self.factors {
            for _ in 0..f.mult {
                acc = &acc * &Poly::linear_factor(f.root);
            }
        }
        acc
    }

    /// Monic cofactor `Π_{b ≠ a} (X - b)^{μ_b}` of the factor at index `i`.
    pub fn monic_cofactor(&self, i: usize) -> Poly {
        let mut acc = Poly::one();
        for (j, f) in self.factors.iter().enumerate() {
            if j == i {
                continue;
            }
            for _ in 0..f.mult {
                acc = &acc * &Poly::linear_factor(f.root);
            }
        }
        acc
    }
}
