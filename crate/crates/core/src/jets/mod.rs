//! Truncated local expansions ("jets") and the germ families that produce
//! them.
//!
//! A [`Jet`] of order `μ` at center `a` stores `c_0, ..., c_μ`, standing for
//! `Σ c_n (X - a)^n` modulo `(X - a)^{μ+1}`. The order is part of the value:
//! trailing zero coefficients are kept, and binary operations return the
//! smaller of the two operand orders.

mod germ;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::encoding::LocalWire;
use crate::error::{Error, Result};
use crate::scalar::Poly;

pub use germ::{ExpGerm, GermProduct, GermSum, JetOracle, RationalGerm};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LocalWire", into = "LocalWire")]
pub struct Jet {
    center: Complex64,
    coeffs: Vec<Complex64>,
}

impl Jet {
    /// Jet of order `coeffs.len() - 1`.
    ///
    /// Panics if `coeffs` is empty; see [`Jet::try_new`] for checked input.
    pub fn new(center: Complex64, coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "a jet has at least one coefficient");
        Jet { center, coeffs }
    }

    pub fn try_new(center: Complex64, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("a jet has at least one coefficient".into()));
        }
        Ok(Jet { center, coeffs })
    }

    pub fn zero(center: Complex64, order: usize) -> Self {
        Jet {
            center,
            coeffs: vec![ZERO; order + 1],
        }
    }

    pub fn unit(center: Complex64, order: usize) -> Self {
        let mut j = Self::zero(center, order);
        j.coeffs[0] = ONE;
        j
    }

    /// Order `μ` Taylor development of `p` at `a`.
    pub fn of_poly(p: &Poly, a: Complex64, order: usize) -> Self {
        Jet {
            center: a,
            coeffs: p.taylor_coeffs(a, order + 1),
        }
    }

    /// Order `μ` development of `e^{tX}` at `a`: `e^{at} Σ t^n (X-a)^n / n!`.
    pub fn exp(t: f64, a: Complex64, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = (a * t).exp();
        coeffs.push(term);
        for n in 1..=order {
            term = term * t / n as f64;
            coeffs.push(term);
        }
        Jet { center: a, coeffs }
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `f(a)`, the constant coefficient.
    pub fn value(&self) -> Complex64 {
        self.coeffs[0]
    }

    fn check_center(&self, other: &Jet) -> Result<()> {
        if self.center != other.center {
            return Err(Error::CenterMismatch {
                left: self.center,
                right: other.center,
            });
        }
        Ok(())
    }

    /// Drops the terms of degree above `order`. Orders above the current one
    /// leave the jet unchanged.
    pub fn truncate(&self, order: usize) -> Jet {
        let n = (order + 1).min(self.coeffs.len());
        Jet {
            center: self.center,
            coeffs: self.coeffs[..n].to_vec(),
        }
    }

    pub fn add(&self, other: &Jet) -> Result<Jet> {
        self.check_center(other)?;
        let n = self.coeffs.len().min(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeffs[i] + other.coeffs[i]).collect();
        Ok(Jet {
            center: self.center,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Jet) -> Result<Jet> {
        self.add(&other.scale(-ONE))
    }

    pub fn scale(&self, s: Complex64) -> Jet {
        Jet {
            center: self.center,
            coeffs: self.coeffs.iter().map(|&c| c * s).collect(),
        }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Jet) -> Result<Jet> {
        self.check_center(other)?;
        let n = self.coeffs.len().min(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| (0..=k).map(|i| self.coeffs[i] * other.coeffs[k - i]).sum())
            .collect();
        Ok(Jet {
            center: self.center,
            coeffs,
        })
    }

    /// Multiplicative inverse of a unit jet (`c_0 ≠ 0`) at the same order.
    pub fn invert(&self) -> Result<Jet> {
        let c0 = self.coeffs[0];
        if c0.norm() == 0.0 {
            return Err(Error::NotAUnit { center: self.center });
        }
        let inv0 = c0.inv();
        let mut g: Vec<Complex64> = Vec::with_capacity(self.coeffs.len());
        g.push(inv0);
        for n in 1..self.coeffs.len() {
            let s: Complex64 = (1..=n).map(|k| self.coeffs[k] * g[n - k]).sum();
            g.push(-s * inv0);
        }
        Ok(Jet {
            center: self.center,
            coeffs: g,
        })
    }

    /// `DL_a^μ(e^{tX} f)`: the jet multiplied by the exponential jet of the
    /// same center and order.
    pub fn exp_times(&self, t: f64) -> Jet {
        Jet::exp(t, self.center, self.order())
            .mul(self)
            .expect("same center by construction")
    }

    /// Coefficient-shift derivative; the order drops by one (an order 0 jet
    /// has the zero jet of order 0 as derivative).
    pub fn derivative(&self) -> Jet {
        if self.coeffs.len() == 1 {
            return Jet::zero(self.center, 0);
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(n, &c)| c * (n + 1) as f64)
            .collect();
        Jet {
            center: self.center,
            coeffs,
        }
    }

    /// Multiplication by `(X - a)^k` at fixed order.
    pub fn shift_up(&self, k: usize) -> Jet {
        let n = self.coeffs.len();
        let coeffs = (0..n).map(|i| if i < k { ZERO } else { self.coeffs[i - k] }).collect();
        Jet {
            center: self.center,
            coeffs,
        }
    }

    /// Expands `Σ c_n (X - a)^n` in the monomial basis.
    pub fn to_poly(&self) -> Poly {
        // Horner in (X - a).
        let lin = Poly::linear_factor(self.center);
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, &c| &(&acc * &lin) + &Poly::constant(c))
    }

    /// Evaluates the truncated series at `x`.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        let h = x - self.center;
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * h + c)
    }

    pub fn max_abs_diff(&self, other: &Jet) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Principal part `Σ_{k=1}^{μ} d_k (X - a)^{-k}` at a pole of order at most `μ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LocalWire", into = "LocalWire")]
pub struct PrincipalPart {
    center: Complex64,
    coeffs: Vec<Complex64>,
}

impl PrincipalPart {
    /// `coeffs[k - 1]` is `d_k`. Panics if `coeffs` is empty.
    pub fn new(center: Complex64, coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "a principal part has order at least 1");
        PrincipalPart { center, coeffs }
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `[d_1, ..., d_μ]`.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `d_k` for `1 ≤ k ≤ μ`.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs[k - 1]
    }

    /// The residue `d_1`.
    pub fn residue(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        let w = (x - self.center).inv();
        self.coeffs.iter().rev().fold(ZERO, |acc, &d| (acc + d) * w)
    }
}
