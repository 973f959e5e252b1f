use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jets::JetOracle;
use crate::scalar::Poly;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Newton form `Σ_i f(a_1, ..., a_i) (X - a_1) ... (X - a_{i-1})` and its
/// expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonInterpolant {
    pub nodes: Vec<Complex64>,
    /// `divided_differences[i]` is `f(a_1, ..., a_{i+1})`.
    pub divided_differences: Vec<Complex64>,
    pub poly: Poly,
}

/// Interpolates `values[i] = f(nodes[i])` at pairwise distinct nodes.
pub fn newton_interpolation(values: &[Complex64], nodes: &[Complex64]) -> Result<NewtonInterpolant> {
    if values.len() != nodes.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} values for {} nodes",
            values.len(),
            nodes.len()
        )));
    }
    for (i, a) in nodes.iter().enumerate() {
        if nodes[..i].contains(a) {
            return Err(Error::ConfluentNodes);
        }
    }
    // Column-wise table, overwritten in place from the bottom.
    let k = nodes.len();
    let mut dd = values.to_vec();
    for j in 1..k {
        for i in (j..k).rev() {
            dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - j]);
        }
    }
    let mut poly = Poly::zero();
    for i in (0..k).rev() {
        poly = &(&poly * &Poly::linear_factor(nodes[i])) + &Poly::constant(dd[i]);
    }
    Ok(NewtonInterpolant {
        nodes: nodes.to_vec(),
        divided_differences: dd,
        poly,
    })
}

/// Newton interpolation of a germ from its values at the nodes. For a
/// polynomial germ the result is its remainder by `Π (X - a_i)`.
pub fn newton_interpolation_germ<F: JetOracle + ?Sized>(f: &F, nodes: &[Complex64]) -> Result<NewtonInterpolant> {
    let values: Vec<Complex64> = nodes
        .iter()
        .map(|&a| f.jet_at(a, 0).map(|j| j.value()))
        .collect::<Result<_>>()?;
    newton_interpolation(&values, nodes)
}

/// Remainder of `X^r` by `(X - a_1) ... (X - a_k)`:
///
/// `Σ_i s_{r-i+1}(a_1, ..., a_i) (X - a_1) ... (X - a_{i-1})`,
///
/// with `s_n` the complete homogeneous symmetric sums, computed by the
/// division-free recurrence `s_n(a_1..a_i) = s_n(a_1..a_{i-1}) + a_i s_{n-1}(a_1..a_i)`.
/// Nodes may coincide.
pub fn universal_remainder_xr(r: usize, nodes: &[Complex64]) -> Poly {
    let k = nodes.len();
    if k == 0 {
        return Poly::zero();
    }
    if r < k {
        return Poly::monomial(ONE, r);
    }
    // s[n] holds s_n(a_1..a_i) after processing node i.
    let mut s = vec![ZERO; r + 1];
    s[0] = ONE;
    let mut acc = Poly::zero();
    let mut basis = Poly::one();
    for (i, &a) in nodes.iter().enumerate() {
        for n in 1..=r {
            s[n] = s[n] + a * s[n - 1];
        }
        // node index i is a_{i+1}; it contributes s_{r-i}
        acc = &acc + &basis.scale(s[r - i]);
        basis = &basis * &Poly::linear_factor(a);
    }
    acc
}

/// Complete homogeneous symmetric sum `s_n(a_1, ..., a_k)`.
pub fn complete_homogeneous(n: usize, vars: &[Complex64]) -> Complex64 {
    let mut s = vec![ZERO; n + 1];
    s[0] = ONE;
    for &a in vars {
        for m in 1..=n {
            s[m] = s[m] + a * s[m - 1];
        }
    }
    s[n]
}
