#![allow(dead_code)]

use proptest::prelude::*;
use remcalc::matrixfun::characteristic_polynomial;
use remcalc::{find_roots, Complex64, ComplexMatrix, FactoredPoly, Poly};

pub fn cplx(r: f64) -> impl Strategy<Value = Complex64> {
    (-r..r, -r..r).prop_map(|(a, b)| Complex64::new(a, b))
}

pub fn poly(max_degree: usize) -> impl Strategy<Value = Poly> {
    poly_between(0, max_degree)
}

/// Degree exactly in `min_degree..=max_degree`.
pub fn poly_between(min_degree: usize, max_degree: usize) -> impl Strategy<Value = Poly> {
    (proptest::collection::vec(cplx(2.0), min_degree..=max_degree), nonzero()).prop_map(|(mut c, lead)| {
        c.push(lead);
        Poly::new(c)
    })
}

/// Modulus in `[0.5, 2]`, any phase.
pub fn nonzero() -> impl Strategy<Value = Complex64> {
    (0.5..2.0f64, 0.0..std::f64::consts::TAU).prop_map(|(r, th)| Complex64::from_polar(r, th))
}

/// Up to `max_roots` distinct roots with total multiplicity at most
/// `max_total`, pairwise at least `0.1` apart: roots sit in distinct cells
/// of a grid of spacing `0.5` with a jitter of at most `0.2`.
pub fn roots(max_roots: usize, max_total: usize) -> impl Strategy<Value = FactoredPoly> {
    let cells = proptest::sample::subsequence((0..64).collect::<Vec<usize>>(), 1..=max_roots);
    (
        cells,
        proptest::collection::vec((-0.2..0.2f64, -0.2..0.2f64, 1usize..=3), max_roots),
    )
        .prop_map(move |(cells, jitter)| {
            let mut budget = max_total;
            let mut factors = Vec::new();
            for (cell, (dx, dy, m)) in cells.iter().zip(jitter) {
                if budget == 0 {
                    break;
                }
                let m = m.min(budget);
                budget -= m;
                let x = (cell % 8) as f64 * 0.5 - 1.75 + dx;
                let y = (cell / 8) as f64 * 0.5 - 1.75 + dy;
                factors.push((Complex64::new(x, y), m));
            }
            FactoredPoly::monic(factors).unwrap()
        })
}

/// Like [`roots`], pairwise at least `0.5` apart inside `[-2, 2]^2`.
pub fn separated_roots(max_roots: usize, max_total: usize) -> impl Strategy<Value = FactoredPoly> {
    let cells = proptest::sample::subsequence((0..16).collect::<Vec<usize>>(), 1..=max_roots.min(16));
    (
        cells,
        proptest::collection::vec((-0.25..0.25f64, -0.25..0.25f64, 1usize..=3), max_roots),
    )
        .prop_map(move |(cells, jitter)| {
            let mut budget = max_total;
            let mut factors = Vec::new();
            for (cell, (dx, dy, m)) in cells.iter().zip(jitter) {
                if budget == 0 {
                    break;
                }
                let m = m.min(budget);
                budget -= m;
                let x = (cell % 4) as f64 - 1.5 + dx;
                let y = (cell / 4) as f64 - 1.5 + dy;
                factors.push((Complex64::new(x, y), m));
            }
            FactoredPoly::monic(factors).unwrap()
        })
}

pub fn with_leading(d: &FactoredPoly, c: Complex64) -> FactoredPoly {
    FactoredPoly::new(c, d.factors().iter().map(|f| (f.root, f.mult))).unwrap()
}

pub fn matrix(max_order: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max_order).prop_flat_map(|q| {
        proptest::collection::vec(cplx(1.0), q * q).prop_map(move |e| ComplexMatrix::from_row_major(q, e).unwrap())
    })
}

/// Smallest distance between two eigenvalues, `inf` for a single one.
pub fn eigenvalue_separation(a: &ComplexMatrix) -> f64 {
    let fp = match find_roots(&characteristic_polynomial(a), 1e-8) {
        Ok(fp) => fp,
        Err(_) => return 0.0,
    };
    if fp.factors().iter().any(|f| f.mult > 1) {
        return 0.0;
    }
    let rs: Vec<Complex64> = fp.factors().iter().map(|f| f.root).collect();
    let mut sep = f64::INFINITY;
    for i in 0..rs.len() {
        for j in 0..i {
            sep = sep.min((rs[i] - rs[j]).norm());
        }
    }
    sep
}

pub fn coeff_rel_err(got: &Poly, want: &Poly) -> f64 {
    got.max_abs_diff(want) / want.max_abs().max(1.0)
}
