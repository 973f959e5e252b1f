use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::encoding::MatrixWire;
use crate::error::{Error, Result};
use crate::scalar::Poly;

/// Dense square complex matrix, row-major.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixWire", into = "MatrixWire")]
pub struct ComplexMatrix {
    order: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn from_row_major(order: usize, entries: Vec<Complex64>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidInput("matrix order must be at least 1".into()));
        }
        if entries.len() != order * order {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for order {order}",
                entries.len()
            )));
        }
        if entries.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("matrix entries must be finite".into()));
        }
        Ok(ComplexMatrix { order, entries })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let order = rows.len();
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)))
            .collect();
        Self::from_row_major(order, entries)
    }

    pub fn zeros(order: usize) -> Self {
        ComplexMatrix {
            order,
            entries: vec![Complex64::new(0.0, 0.0); order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        Self::scalar(order, Complex64::new(1.0, 0.0))
    }

    pub fn scalar(order: usize, s: Complex64) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m[(i, i)] = s;
        }
        m
    }

    pub fn diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.order).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        let q = self.order;
        let mut t = Self::zeros(q);
        for i in 0..q {
            for j in 0..q {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn scale(&self, s: Complex64) -> Self {
        ComplexMatrix {
            order: self.order,
            entries: self.entries.iter().map(|&c| c * s).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.order).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.order, "vector length must match matrix order");
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// `self + s I`.
    pub fn shifted(&self, s: Complex64) -> Self {
        let mut m = self.clone();
        for i in 0..self.order {
            m[(i, i)] += s;
        }
        m
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({})[", self.order)?;
        for i in 0..self.order {
            writeln!(f, "  {:?}", &self.entries[i * self.order..(i + 1) * self.order])?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.order + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.order + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.order, rhs.order, "matrix orders must match");
        let q = self.order;
        let mut out = ComplexMatrix::zeros(q);
        for i in 0..q {
            for k in 0..q {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..q {
                    out.entries[i * q + j] += a * rhs.entries[k * q + j];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.order, rhs.order, "matrix orders must match");
        ComplexMatrix {
            order: self.order,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.order, rhs.order, "matrix orders must match");
        ComplexMatrix {
            order: self.order,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Companion matrix of a monic `d = X^q + a_{q-1} X^{q-1} + ... + a_0`,
/// characterised by `A e_j = e_{j+1}` for `j < q` and
/// `A e_q = -a_0 e_1 - ... - a_{q-1} e_q`.
pub fn companion_matrix(d: &Poly) -> Result<ComplexMatrix> {
    let q = match d.degree() {
        Some(q) if q >= 1 => q,
        _ => return Err(Error::InvalidInput("companion matrix needs degree at least 1".into())),
    };
    if !d.is_monic() {
        return Err(Error::NotMonic);
    }
    let mut a = ComplexMatrix::zeros(q);
    for j in 0..q - 1 {
        a[(j + 1, j)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..q {
        a[(i, q - 1)] = -d.coeff(i);
    }
    Ok(a)
}
