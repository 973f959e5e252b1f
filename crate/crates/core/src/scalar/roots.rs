//! Root finding with multiplicity detection.
//!
//! Roots are located by Aberth–Ehrlich simultaneous iteration on a rescaled
//! copy of the polynomial (roots of modulus about one). Floating-point roots
//! of a multiple factor split into a small cloud, so before the final
//! distance clustering each tight group of `m` approximations is tested as a
//! candidate `m`-fold root: the centroid is polished by Newton's method on
//! the `(m-1)`-th derivative, where the root is simple, and accepted when the
//! first `m` Taylor coefficients vanish to rounding level. Accepted groups
//! collapse onto the polished point; the distance clustering with the
//! user tolerance then sees them as coincident.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::{FactoredPoly, Poly};

/// Default distance tolerance for merging roots.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;

pub const MAX_ITERATIONS: usize = 200;

const RESIDUAL_RTOL: f64 = 1e-13;
const RECONSTRUCTION_RTOL: f64 = 1e-6;

/// Factors `p` into its leading coefficient and distinct roots with
/// multiplicities.
///
/// Roots whose mutual distance is below `cluster_tol * (1 + max|root|)` are
/// merged to their centroid. The expansion of the result is checked against
/// `p`; a mismatch above `1e-6 * max|coeff|` is reported as
/// [`Error::IllConditioned`].
pub fn find_roots(p: &Poly, cluster_tol: f64) -> Result<FactoredPoly> {
    let n = match p.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::InvalidInput("find_roots needs degree at least 1".into())),
    };
    let lead = p.leading().expect("nonzero");
    // exact zero roots are split off rather than iterated on
    let zeros = p
        .coeffs()
        .iter()
        .take_while(|c| **c == Complex64::new(0.0, 0.0))
        .count();
    if zeros == n {
        return FactoredPoly::new(lead, [(Complex64::new(0.0, 0.0), n)]);
    }
    if zeros > 0 {
        let rest = find_roots(&Poly::new(p.coeffs()[zeros..].to_vec()), cluster_tol)?;
        let factors = rest
            .factors()
            .iter()
            .map(|f| (f.root, f.mult))
            .chain([(Complex64::new(0.0, 0.0), zeros)]);
        return FactoredPoly::new(lead, factors.collect::<Vec<_>>());
    }
    let monic: Vec<Complex64> = p.coeffs().iter().map(|&c| c / lead).collect();

    // Rescale X = rho * Y so the roots of the working polynomial have modulus ~1.
    let rho = root_radius(&monic);
    let scaled = Poly::new(
        monic
            .iter()
            .enumerate()
            .map(|(k, &c)| c * rho.powi(k as i32 - n as i32))
            .collect(),
    );

    let mut ys = aberth(&scaled)?;
    collapse_multiple_roots(&scaled, &mut ys, cluster_tol);
    let xs: Vec<Complex64> = ys.iter().map(|&y| y * rho).collect();

    let mut factors = cluster(&xs, cluster_tol);
    if p.coeffs().iter().all(|c| c.im == 0.0) {
        impose_conjugate_symmetry(&mut factors);
    }
    let fp = FactoredPoly::new(lead, factors)?;
    let mismatch = fp.expand().max_abs_diff(p);
    if mismatch > RECONSTRUCTION_RTOL * p.max_abs() {
        return Err(Error::IllConditioned { mismatch });
    }
    Ok(fp)
}

/// Roots of a real polynomial are real or come in conjugate pairs. A root
/// that is itself the nearest root to its conjugate is made real; a root
/// paired with another is made its exact conjugate.
fn impose_conjugate_symmetry(factors: &mut [(Complex64, usize)]) {
    for i in 0..factors.len() {
        let (a, m) = factors[i];
        if a.im == 0.0 {
            continue;
        }
        let c = a.conj();
        let mut nearest = i;
        for (j, &(b, _)) in factors.iter().enumerate() {
            if (b - c).norm() < (factors[nearest].0 - c).norm() {
                nearest = j;
            }
        }
        if nearest == i {
            factors[i].0 = Complex64::new(a.re, 0.0);
        } else if nearest > i && factors[nearest].1 == m {
            factors[nearest].0 = c;
        }
    }
}

/// Fujiwara-type bound on the root moduli of a monic polynomial.
fn root_radius(monic: &[Complex64]) -> f64 {
    let n = monic.len() - 1;
    let r = (1..=n)
        .map(|k| monic[n - k].norm().powf(1.0 / k as f64))
        .fold(0.0, f64::max);
    if r > 0.0 && r.is_finite() {
        r
    } else {
        1.0
    }
}

fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn aberth(p: &Poly) -> Result<Vec<Complex64>> {
    let n = p.degree().expect("degree checked");
    let coeffs = p.coeffs();
    let center = -coeffs[n - 1] / n as f64;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            center + Complex64::from_polar(1.0, theta)
        })
        .collect();
    let mut done = vec![false; n];

    for _ in 0..MAX_ITERATIONS {
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (pz, dpz) = eval_with_derivative(coeffs, z[k]);
            if pz.norm() <= RESIDUAL_RTOL * p.eval_scale(z[k]) {
                done[k] = true;
                continue;
            }
            if dpz.norm() == 0.0 {
                z[k] += Complex64::new(1e-8, 1e-8);
                continue;
            }
            let ratio = pz / dpz;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| {
                    let d = z[k] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let denom = Complex64::new(1.0, 0.0) - ratio * repulsion;
            let step = if denom.norm() == 0.0 { ratio } else { ratio / denom };
            z[k] -= step;
            if step.norm() <= 4.0 * f64::EPSILON * z[k].norm().max(1.0) {
                done[k] = true;
            }
        }
        if done.iter().all(|&d| d) {
            return Ok(z);
        }
    }
    Err(Error::RootFindingFailed {
        iterations: MAX_ITERATIONS,
    })
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Polishes a candidate `m`-fold root and reports whether it passes.
fn polish_multiple_root(p: &Poly, start: Complex64, m: usize, eta: f64) -> Option<Complex64> {
    let mut g = p.clone();
    for _ in 1..m {
        g = g.derivative();
    }
    let dg = g.derivative();
    let mut c = start;
    for _ in 0..30 {
        let d = dg.eval(c);
        if d.norm() == 0.0 {
            break;
        }
        let step = g.eval(c) / d;
        c -= step;
        if step.norm() <= 2.0 * f64::EPSILON * c.norm().max(1.0) {
            break;
        }
    }
    if !c.is_finite() {
        return None;
    }
    let taylor = p.taylor_coeffs(c, m);
    let r = c.norm();
    let ok = taylor.iter().enumerate().all(|(j, t)| {
        let scale: f64 = p
            .coeffs()
            .iter()
            .enumerate()
            .skip(j)
            .map(|(k, b)| b.norm() * binomial(k, j) * r.powi((k - j) as i32))
            .sum();
        t.norm() <= eta * scale
    });
    ok.then_some(c)
}

/// Single-linkage grouping of `points[i]` for `i` in `active`.
fn groups_within(points: &[Complex64], active: &[usize], radius: f64) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..active.len()).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        let mut j = i;
        while parent[j] != r {
            let next = parent[j];
            parent[j] = r;
            j = next;
        }
        r
    }
    for a in 0..active.len() {
        for b in (a + 1)..active.len() {
            if (points[active[a]] - points[active[b]]).norm() < radius {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut label: Vec<Option<usize>> = vec![None; active.len()];
    for (a, &point) in active.iter().enumerate() {
        let r = find(&mut parent, a);
        match label[r] {
            Some(g) => groups[g].push(point),
            None => {
                label[r] = Some(groups.len());
                groups.push(vec![point]);
            }
        }
    }
    groups
}

fn centroid(points: &[Complex64], idx: &[usize]) -> Complex64 {
    idx.iter().map(|&i| points[i]).sum::<Complex64>() / idx.len() as f64
}

fn collapse_multiple_roots(p: &Poly, ys: &mut [Complex64], cluster_tol: f64) {
    let eta = (1e-2 * cluster_tol).max(64.0 * f64::EPSILON);
    let span = 1.0 + ys.iter().map(|y| y.norm()).fold(0.0, f64::max);
    let mut active: Vec<usize> = (0..ys.len()).collect();
    let mut radius = 1e-3 * span;
    let floor = cluster_tol * span;
    while radius >= floor && active.len() > 1 {
        let mut settled = Vec::new();
        for group in groups_within(ys, &active, radius) {
            if group.len() < 2 {
                continue;
            }
            let start = centroid(ys, &group);
            if let Some(c) = polish_multiple_root(p, start, group.len(), eta) {
                if (c - start).norm() <= radius {
                    for &i in &group {
                        ys[i] = c;
                    }
                    settled.extend(group);
                }
            }
        }
        active.retain(|i| !settled.contains(i));
        radius /= 10.0;
    }
}

/// Distance clustering: roots closer than `tol * (1 + max|root|)` merge to
/// their centroid with summed multiplicity.
fn cluster(xs: &[Complex64], tol: f64) -> Vec<(Complex64, usize)> {
    let span = 1.0 + xs.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let all: Vec<usize> = (0..xs.len()).collect();
    groups_within(xs, &all, tol * span)
        .into_iter()
        .map(|g| (centroid(xs, &g), g.len()))
        .collect()
}
