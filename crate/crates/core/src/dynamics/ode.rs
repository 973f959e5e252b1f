use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::crt::{cofactor_inverse, taylor_gauss_remainder};
use crate::dynamics::exppoly::{convolution, ExpPolyFunction, ExpPolyTerm};
use crate::dynamics::quadrature::{integrate, QuadratureOptions};
use crate::dynamics::recurrence::require_monic;
use crate::error::{Error, Result};
use crate::jets::ExpGerm;
use crate::scalar::{find_roots, FactoredPoly, Poly, DEFAULT_CLUSTER_TOL};

/// `e^{tX} mod D`; coefficient `n` is `g_n(t)`.
pub fn g_continuous(t: f64, d: &Poly) -> Result<Poly> {
    require_monic(d)?;
    let fp = find_roots(d, DEFAULT_CLUSTER_TOL)?;
    taylor_gauss_remainder(&ExpGerm::new(t), &fp)
}

/// The functions `g_0, ..., g_{q-1}` in closed form.
///
/// At a root `a` of multiplicity `μ` with cofactor `M_a`, the local term of
/// the remainder of `e^{tX}` is
/// `Σ_{m<μ} Σ_{j≤m} e^{at} t^j / j! · inv_a[m-j] · (X-a)^m M_a`,
/// with `inv_a` the jet of `1/M_a`; reading off the coefficient of `X^n`
/// gives `g_n` as an exp-poly function of `t`.
pub fn exp_poly_basis(d: &FactoredPoly) -> Result<Vec<ExpPolyFunction>> {
    let q = d.degree();
    let mut terms: Vec<Vec<ExpPolyTerm>> = vec![Vec::new(); q];
    for (i, fac) in d.factors().iter().enumerate() {
        let (cof, inv) = cofactor_inverse(d, i)?;
        let mut shifted = cof;
        for m in 0..fac.mult {
            for j in 0..=m {
                let weight = inv.coeffs()[m - j] / factorial(j);
                for (n, slot) in terms.iter_mut().enumerate() {
                    let c = weight * shifted.coeff(n);
                    if c != Complex64::new(0.0, 0.0) {
                        slot.push(ExpPolyTerm::new(c, j as u32, fac.root));
                    }
                }
            }
            shifted = &shifted * &Poly::linear_factor(fac.root);
        }
    }
    Ok(terms
        .into_iter()
        .map(|t| ExpPolyFunction::new(t).simplified())
        .collect())
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

/// Forcing sampled on a strictly increasing time table, linearly
/// interpolated in between.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, try_from = "SampledRaw")]
pub struct SampledForcing {
    times: Vec<f64>,
    values: Vec<Complex64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SampledRaw {
    times: Vec<f64>,
    values: Vec<Complex64>,
}

impl TryFrom<SampledRaw> for SampledForcing {
    type Error = Error;

    fn try_from(raw: SampledRaw) -> Result<Self> {
        SampledForcing::new(raw.times, raw.values)
    }
}

impl SampledForcing {
    pub fn new(times: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} times for {} values",
                times.len(),
                values.len()
            )));
        }
        if times.len() < 2 {
            return Err(Error::InvalidInput(
                "a sampled forcing needs at least two points".into(),
            ));
        }
        if times.iter().any(|t| !t.is_finite()) || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("sampled forcing must be finite".into()));
        }
        if times.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("sample times must be strictly increasing".into()));
        }
        Ok(SampledForcing { times, values })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn eval(&self, t: f64) -> Result<Complex64> {
        let (first, last) = (self.times[0], self.times[self.times.len() - 1]);
        if !(first..=last).contains(&t) {
            return Err(Error::OutOfRange { t });
        }
        let i = self.times.partition_point(|&s| s <= t).clamp(1, self.times.len() - 1);
        let (t0, t1) = (self.times[i - 1], self.times[i]);
        let w = (t - t0) / (t1 - t0);
        Ok(self.values[i - 1] * (1.0 - w) + self.values[i] * w)
    }
}

pub type ForcingFn = Arc<dyn Fn(f64) -> Result<Complex64> + Send + Sync>;

/// Right-hand side `f` of `D(d/dt) y = f`.
#[derive(Clone)]
pub enum Forcing {
    ExpPoly(ExpPolyFunction),
    Sampled(SampledForcing),
    /// An arbitrary continuous function; integrated by quadrature only.
    Function(ForcingFn),
}

impl fmt::Debug for Forcing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Forcing::ExpPoly(e) => f.debug_tuple("ExpPoly").field(e).finish(),
            Forcing::Sampled(s) => f.debug_tuple("Sampled").field(s).finish(),
            Forcing::Function(_) => f.write_str("Function(..)"),
        }
    }
}

impl Forcing {
    pub fn zero() -> Self {
        Forcing::ExpPoly(ExpPolyFunction::zero())
    }

    pub fn eval(&self, t: f64) -> Result<Complex64> {
        match self {
            Forcing::ExpPoly(e) => Ok(e.eval(t)),
            Forcing::Sampled(s) => s.eval(t),
            Forcing::Function(f) => f(t),
        }
    }
}

/// `D(d/dt) y = f` with `y^{(n)}(0) = y_n` for `n < q`.
#[derive(Debug, Clone)]
pub struct OdeProblem {
    d: Poly,
    initials: Vec<Complex64>,
    forcing: Forcing,
}

impl OdeProblem {
    pub fn new(d: Poly, initials: Vec<Complex64>, forcing: Forcing) -> Result<Self> {
        let q = require_monic(&d)?;
        if initials.len() != q {
            return Err(Error::DimensionMismatch(format!(
                "{} initial values for a degree {q} operator",
                initials.len()
            )));
        }
        Ok(OdeProblem { d, initials, forcing })
    }

    pub fn d(&self) -> &Poly {
        &self.d
    }

    pub fn initials(&self) -> &[Complex64] {
        &self.initials
    }

    pub fn forcing(&self) -> &Forcing {
        &self.forcing
    }

    pub fn order(&self) -> usize {
        self.initials.len()
    }
}

/// How the convolution `∫_0^t g_{q-1}(t-x) f(x) dx` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConvolutionMethod {
    /// Closed form for exp-poly forcing, quadrature otherwise.
    #[default]
    Auto,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColletOptions {
    pub method: ConvolutionMethod,
    pub quadrature: QuadratureOptions,
    pub cluster_tol: f64,
}

impl Default for ColletOptions {
    fn default() -> Self {
        ColletOptions {
            method: ConvolutionMethod::Auto,
            quadrature: QuadratureOptions::default(),
            cluster_tol: DEFAULT_CLUSTER_TOL,
        }
    }
}

/// The Collet formula
/// `y(t) = Σ_{n<q} y_n g_n(t) + ∫_0^t g_{q-1}(t-x) f(x) dx`,
/// with the roots of `D` and the closed forms of `g_n` computed once.
#[derive(Debug, Clone)]
pub struct ColletSolver {
    prob: OdeProblem,
    roots: FactoredPoly,
    kernel: ExpPolyFunction,
    opts: ColletOptions,
}

impl ColletSolver {
    pub fn new(prob: OdeProblem, opts: ColletOptions) -> Result<Self> {
        let roots = find_roots(&prob.d, opts.cluster_tol)?;
        let kernel = exp_poly_basis(&roots)?.pop().unwrap_or_default();
        Ok(ColletSolver {
            prob,
            roots,
            kernel,
            opts,
        })
    }

    pub fn problem(&self) -> &OdeProblem {
        &self.prob
    }

    pub fn roots(&self) -> &FactoredPoly {
        &self.roots
    }

    /// `g_{q-1}` in closed form.
    pub fn kernel(&self) -> &ExpPolyFunction {
        &self.kernel
    }

    pub fn homogeneous(&self, t: f64) -> Result<Complex64> {
        let g = taylor_gauss_remainder(&ExpGerm::new(t), &self.roots)?;
        Ok(self.prob.initials.iter().enumerate().map(|(n, y)| y * g.coeff(n)).sum())
    }

    pub fn convolution(&self, t: f64) -> Result<Complex64> {
        if t == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        match (&self.prob.forcing, self.opts.method) {
            (Forcing::ExpPoly(f), ConvolutionMethod::Auto) => Ok(convolution(&self.kernel, f, t)),
            (Forcing::Sampled(s), _) => {
                let (lo, hi) = (t.min(0.0), t.max(0.0));
                let (first, last) = (s.times()[0], s.times()[s.times().len() - 1]);
                if lo < first || hi > last {
                    return Err(Error::OutOfRange {
                        t: if lo < first { lo } else { hi },
                    });
                }
                // split at the table nodes, where the interpolant has kinks
                let mut cuts = vec![0.0];
                let inner = s.times().iter().copied().filter(|&x| x > lo && x < hi && x != 0.0);
                if t > 0.0 {
                    cuts.extend(inner);
                } else {
                    cuts.extend(inner.rev());
                }
                cuts.push(t);
                cuts.windows(2)
                    .map(|w| self.quadrature(w[0], w[1], t))
                    .sum::<Result<Complex64>>()
            }
            _ => self.quadrature(0.0, t, t),
        }
    }

    fn quadrature(&self, a: f64, b: f64, t: f64) -> Result<Complex64> {
        let f = &self.prob.forcing;
        integrate(|x| Ok(self.kernel.eval(t - x) * f.eval(x)?), a, b, self.opts.quadrature)
    }

    pub fn solve(&self, t: f64) -> Result<Complex64> {
        if !t.is_finite() {
            return Err(Error::InvalidInput("t must be finite".into()));
        }
        Ok(self.homogeneous(t)? + self.convolution(t)?)
    }

    pub fn solve_grid(&self, grid: &[f64]) -> Result<Vec<Complex64>> {
        grid.iter().map(|&t| self.solve(t)).collect()
    }
}

/// `y(t)` by the Collet formula with default options.
pub fn ode_solve_collet(prob: &OdeProblem, t: f64) -> Result<Complex64> {
    ColletSolver::new(prob.clone(), ColletOptions::default())?.solve(t)
}

pub fn ode_solve_collet_grid(prob: &OdeProblem, grid: &[f64]) -> Result<Vec<Complex64>> {
    ColletSolver::new(prob.clone(), ColletOptions::default())?.solve_grid(grid)
}

/// Uniform grid `start + i h`, `i = 0, ..., points - 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid {
    pub start: f64,
    pub step: f64,
    pub points: usize,
}

impl UniformGrid {
    pub fn end(&self) -> f64 {
        self.start + self.step * (self.points.saturating_sub(1)) as f64
    }
}

/// `max |D(d/dt) y - f|` over the grid points where every stencil fits.
///
/// The `j`-th derivative is the central difference
/// `h^{-j} Σ_i (-1)^i binom(j, i) y(t + (j/2 - i) h)`, which for odd `j`
/// samples at half steps; a point is interior when `t ± q h / 2` stays in
/// the grid.
pub fn ode_residual_check<S>(prob: &OdeProblem, solution: S, grid: &UniformGrid) -> Result<f64>
where
    S: Fn(f64) -> Result<Complex64>,
{
    let q = prob.order();
    let h = grid.step;
    if !h.is_finite() || h <= 0.0 {
        return Err(Error::InvalidInput("grid step must be positive".into()));
    }
    let reach = q as f64 * h / 2.0;
    let (lo, hi) = (grid.start, grid.end());
    let mut worst: Option<f64> = None;
    for i in 0..grid.points {
        let t = grid.start + h * i as f64;
        if t - reach < lo - 1e-12 * h || t + reach > hi + 1e-12 * h {
            continue;
        }
        let mut lhs = Complex64::new(0.0, 0.0);
        for (j, dj) in prob.d.coeffs().iter().enumerate() {
            if *dj == Complex64::new(0.0, 0.0) {
                continue;
            }
            let mut diff = Complex64::new(0.0, 0.0);
            let mut binom = 1.0;
            for k in 0..=j {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                diff += solution(t + (j as f64 / 2.0 - k as f64) * h)? * (sign * binom);
                binom = binom * (j - k) as f64 / (k + 1) as f64;
            }
            lhs += dj * diff / h.powi(j as i32);
        }
        let r = (lhs - prob.forcing.eval(t)?).norm();
        worst = Some(worst.map_or(r, |w: f64| w.max(r)));
    }
    worst.ok_or(Error::GridTooCoarse { order: q })
}
