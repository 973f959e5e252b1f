use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `c t^k e^{λt}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpPolyTerm {
    pub c: Complex64,
    pub k: u32,
    pub lambda: Complex64,
}

impl ExpPolyTerm {
    pub fn new(c: Complex64, k: u32, lambda: Complex64) -> Self {
        ExpPolyTerm { c, k, lambda }
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        self.c * t.powi(self.k as i32) * (self.lambda * t).exp()
    }
}

/// A finite sum `f(t) = Σ c t^k e^{λt}`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExpPolyFunction {
    terms: Vec<ExpPolyTerm>,
}

impl ExpPolyFunction {
    pub fn new(terms: Vec<ExpPolyTerm>) -> Self {
        ExpPolyFunction { terms }
    }

    pub fn zero() -> Self {
        ExpPolyFunction { terms: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::term(c, 0, ZERO)
    }

    pub fn term(c: Complex64, k: u32, lambda: Complex64) -> Self {
        ExpPolyFunction {
            terms: vec![ExpPolyTerm::new(c, k, lambda)],
        }
    }

    pub fn terms(&self) -> &[ExpPolyTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.c == ZERO)
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        self.terms.iter().map(|term| term.eval(t)).sum()
    }

    /// Merges terms with equal `(k, λ)` and drops zero coefficients.
    pub fn simplified(&self) -> Self {
        let mut out: Vec<ExpPolyTerm> = Vec::new();
        for term in &self.terms {
            match out.iter_mut().find(|o| o.k == term.k && o.lambda == term.lambda) {
                Some(o) => o.c += term.c,
                None => out.push(*term),
            }
        }
        out.retain(|t| t.c != ZERO);
        ExpPolyFunction { terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        ExpPolyFunction { terms }.simplified()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        ExpPolyFunction {
            terms: self.terms.iter().map(|t| ExpPolyTerm { c: t.c * s, ..*t }).collect(),
        }
    }

    pub fn product(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(ExpPolyTerm::new(a.c * b.c, a.k + b.k, a.lambda + b.lambda));
            }
        }
        ExpPolyFunction { terms }.simplified()
    }

    pub fn derivative(&self) -> Self {
        let mut terms = Vec::new();
        for t in &self.terms {
            if t.k > 0 {
                terms.push(ExpPolyTerm::new(t.c * t.k as f64, t.k - 1, t.lambda));
            }
            if t.lambda != ZERO {
                terms.push(ExpPolyTerm::new(t.c * t.lambda, t.k, t.lambda));
            }
        }
        ExpPolyFunction { terms }.simplified()
    }

    /// The antiderivative vanishing at `0`.
    ///
    /// For `λ ≠ 0`, `∫ t^k e^{λt} = e^{λt} Σ_j (-1)^j k!/(k-j)! t^{k-j} / λ^{j+1}`;
    /// this loses accuracy when `|λ|` is tiny compared to `1/t`.
    pub fn antiderivative(&self) -> Self {
        let mut terms = Vec::new();
        let mut constant = ZERO;
        for t in &self.terms {
            if t.lambda == ZERO {
                terms.push(ExpPolyTerm::new(t.c / (t.k + 1) as f64, t.k + 1, ZERO));
                continue;
            }
            // falling factorial k!/(k-j)! with alternating sign
            let mut factor = Complex64::new(1.0, 0.0);
            let mut lpow = t.lambda;
            for j in 0..=t.k {
                terms.push(ExpPolyTerm::new(t.c * factor / lpow, t.k - j, t.lambda));
                if j == t.k {
                    constant -= t.c * factor / lpow;
                }
                factor *= -((t.k - j) as f64);
                lpow *= t.lambda;
            }
        }
        terms.push(ExpPolyTerm::new(constant, 0, ZERO));
        ExpPolyFunction { terms }.simplified()
    }

    /// `∫_a^b f`.
    pub fn integral(&self, a: f64, b: f64) -> Complex64 {
        let anti = self.antiderivative();
        anti.eval(b) - anti.eval(a)
    }
}

/// `∫_0^t g(t - x) f(x) dx` in closed form.
pub fn convolution(g: &ExpPolyFunction, f: &ExpPolyFunction, t: f64) -> Complex64 {
    let mut acc = ZERO;
    for a in g.terms() {
        for b in f.terms() {
            let delta = b.lambda - a.lambda;
            acc += a.c * b.c * (a.lambda * t).exp() * beta_exp_integral(a.k, b.k, delta, t);
        }
    }
    acc
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `I(k, m, δ, t) = ∫_0^t (t - x)^k x^m e^{δx} dx`.
///
/// For `|δt|` up to `k + m + 1` (and at least 2): the confluent
/// hypergeometric series `t^{k+m+1} B(m+1, k+1) 1F1(m+1; k+m+2; δt)`, with
/// Kummer's transformation when `Re(δt) < 0`. Beyond that: repeated
/// integration by parts, which at either endpoint has a single term per
/// derivative order.
pub fn beta_exp_integral(k: u32, m: u32, delta: Complex64, t: f64) -> Complex64 {
    if t == 0.0 {
        return ZERO;
    }
    let z = delta * t;
    let n = k + m + 1;
    let scale = t.powi(n as i32) * factorial(k) * factorial(m) / factorial(n);
    if z.norm() <= (n as f64).max(2.0) {
        if z.re >= 0.0 {
            scale * hyp1f1(m + 1, n + 1, z)
        } else {
            scale * z.exp() * hyp1f1(k + 1, n + 1, -z)
        }
    } else {
        // p(x) = (t - x)^k x^m; p^{(j)}(t) and p^{(j)}(0) are single monomials.
        let mut at_t = ZERO;
        let mut at_0 = ZERO;
        let mut dpow = delta;
        for j in 0..=(k + m) {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            if j >= k && j - k <= m {
                // (-1)^j j! [s^j] s^k (t-s)^m, s = t - x
                let i = j - k;
                let c = binomial(m, i) * t.powi((m - i) as i32) * if i.is_multiple_of(2) { 1.0 } else { -1.0 };
                at_t += sign * sign * factorial(j) * c / dpow;
            }
            if j >= m && j - m <= k {
                let i = j - m;
                let c = binomial(k, i) * t.powi((k - i) as i32) * if i.is_multiple_of(2) { 1.0 } else { -1.0 };
                at_0 += sign * factorial(j) * c / dpow;
            }
            dpow *= delta;
        }
        z.exp() * at_t - at_0
    }
}

/// `1F1(a; b; z)` by its power series; intended for `|z| ≲ b` and `Re z ≥ 0`.
fn hyp1f1(a: u32, b: u32, z: Complex64) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for n in 0..1000u32 {
        term *= z * ((a + n) as f64 / ((b + n) as f64 * (n + 1) as f64));
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() && (n as f64) > z.norm() {
            break;
        }
    }
    sum
}
