use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative threshold below which trailing coefficients are treated as zero.
pub const CANONICAL_RTOL: f64 = 1e-14;

/// Dense polynomial with complex coefficients.
///
/// Coefficients are stored in ascending order of degree: `coeffs[i]` is the
/// coefficient of `X^i`. The zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Complex64>", into = "Vec<Complex64>")]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    /// Builds a polynomial from ascending coefficients and canonicalizes it.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut p = Poly { coeffs };
        p.canonicalize();
        p
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `X`.
    pub fn x() -> Self {
        Self::monomial(Complex64::new(1.0, 0.0), 1)
    }

    /// `c * X^n`.
    pub fn monomial(c: Complex64, n: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    /// `X - a`.
    pub fn linear_factor(a: Complex64) -> Self {
        Self::new(vec![-a, Complex64::new(1.0, 0.0)])
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of `X^n`, zero past the degree.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Complex64> {
        self.coeffs.last().copied()
    }

    /// Largest coefficient modulus, zero for the zero polynomial.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Strips trailing coefficients below `CANONICAL_RTOL * max|coeff|`
    /// and replaces signed zeros by positive zeros.
    fn canonicalize(&mut self) {
        let scale = self.max_abs();
        let cutoff = CANONICAL_RTOL * scale;
        while let Some(last) = self.coeffs.last() {
            if last.norm() <= cutoff {
                self.coeffs.pop();
            } else {
                break;
            }
        }
        for c in &mut self.coeffs {
            *c = Complex64::new(c.re + 0.0, c.im + 0.0);
        }
    }

    pub fn scale(&self, s: Complex64) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, &c)| c * n as f64)
                .collect(),
        )
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
    }

    /// `Σ |c_n| |x|^n`, the natural scale of a rounding error in `eval(x)`.
    pub fn eval_scale(&self, x: Complex64) -> f64 {
        let r = x.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    /// Schoolbook long division: `self = d * q + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dn = d.degree().ok_or(Error::ZeroDivisor)?;
        let Some(fn_) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if fn_ < dn {
            return Ok((Poly::zero(), self.clone()));
        }
        let lead_inv = d.coeffs[dn].inv();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Complex64::new(0.0, 0.0); fn_ - dn + 1];
        for k in (0..=fn_ - dn).rev() {
            let c = rem[k + dn] * lead_inv;
            quot[k] = c;
            for (j, &dj) in d.coeffs.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
        rem.truncate(dn);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Remainder of the classical division by `d`.
    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        self.divrem(d).map(|(_, r)| r)
    }

    /// First `count` coefficients of `self` in powers of `(X - a)`, by
    /// repeated synthetic division by `(X - a)`. No factorials involved.
    pub fn taylor_coeffs(&self, a: Complex64, count: usize) -> Vec<Complex64> {
        let mut work = self.coeffs.clone();
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            if work.is_empty() {
                out.push(Complex64::new(0.0, 0.0));
                continue;
            }
            // Horner pass: work becomes the quotient, the carry is the remainder.
            let mut carry = Complex64::new(0.0, 0.0);
            for c in work.iter_mut().rev() {
                let next = *c + carry * a;
                *c = carry;
                carry = next;
            }
            out.push(carry);
            work.pop();
        }
        out
    }

    /// Integer power by repeated squaring.
    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficient reversal to the cited degree: `X^n P(1/X)`.
    pub fn reversed(&self, n: usize) -> Poly {
        let mut c = self.coeffs.clone();
        c.resize(n + 1, Complex64::new(0.0, 0.0));
        c.truncate(n + 1);
        c.reverse();
        Poly::new(c)
    }

    pub fn is_monic(&self) -> bool {
        self.leading()
            .is_some_and(|l| (l - Complex64::new(1.0, 0.0)).norm() <= 1e-12)
    }

    /// Largest coefficient-wise distance to `other`.
    pub fn max_abs_diff(&self, other: &Poly) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|i| (self.coeff(i) - other.coeff(i)).norm())
            .fold(0.0, f64::max)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

fn add_coeffs(a: &[Complex64], b: &[Complex64], sign: f64) -> Vec<Complex64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or_default();
            let y = b.get(i).copied().unwrap_or_default();
            x + y * sign
        })
        .collect()
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::new(add_coeffs(&self.coeffs, &rhs.coeffs, 1.0))
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::new(add_coeffs(&self.coeffs, &rhs.coeffs, -1.0))
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
