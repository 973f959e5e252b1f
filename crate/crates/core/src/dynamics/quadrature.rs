//! Adaptive Gauss–Kronrod (7/15-point) quadrature for complex scalar and
//! vector integrands.

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];

/// Gauss weights for the nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    /// Bisect until `|K15 - G7| < rtol (1 + |estimate|)`.
    pub rtol: f64,
    pub max_depth: u32,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions {
            rtol: 1e-10,
            max_depth: 40,
        }
    }
}

struct Panel {
    kronrod: Vec<Complex64>,
    error: f64,
    /// Kronrod estimate of `∫ |f|`, used to recognize rounding-level errors.
    magnitude: f64,
}

fn panel<F>(f: &mut F, a: f64, b: f64, dim: usize) -> Result<Panel>
where
    F: FnMut(f64) -> Result<Vec<Complex64>>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut kronrod = vec![Complex64::new(0.0, 0.0); dim];
    let mut gauss = vec![Complex64::new(0.0, 0.0); dim];
    let mut magnitude = 0.0;
    let mut add = |x: f64, wk: f64, wg: Option<f64>, kronrod: &mut Vec<Complex64>, magnitude: &mut f64| -> Result<()> {
        let v = f(x)?;
        if v.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "integrand returned {} values, expected {dim}",
                v.len()
            )));
        }
        for (i, vi) in v.iter().enumerate() {
            kronrod[i] += vi * wk;
            if let Some(w) = wg {
                gauss[i] += vi * w;
            }
            *magnitude += wk * vi.norm();
        }
        Ok(())
    };
    for j in 0..7 {
        let wg = if j % 2 == 1 { Some(WG[j / 2]) } else { None };
        add(center - half * XGK[j], WGK[j], wg, &mut kronrod, &mut magnitude)?;
        add(center + half * XGK[j], WGK[j], wg, &mut kronrod, &mut magnitude)?;
    }
    add(center, WGK[7], Some(WG[3]), &mut kronrod, &mut magnitude)?;
    for i in 0..dim {
        kronrod[i] *= half;
        gauss[i] *= half;
    }
    let error = kronrod
        .iter()
        .zip(&gauss)
        .map(|(k, g)| (k - g).norm())
        .fold(0.0, f64::max);
    Ok(Panel {
        kronrod,
        error,
        magnitude: magnitude * half.abs(),
    })
}

/// `∫_a^b f` for a vector-valued integrand of dimension `dim`; `a > b` is
/// allowed.
///
/// Globally adaptive: the panel with the largest Kronrod–Gauss difference
/// is bisected until the summed difference is below
/// `rtol (1 + |estimate|)`. Panels whose difference is at rounding level are
/// final. Needing to split a panel past `max_depth` makes the call fail with
/// the current estimate and error bound.
pub fn integrate_vec<F>(mut f: F, a: f64, b: f64, dim: usize, opts: QuadratureOptions) -> Result<Vec<Complex64>>
where
    F: FnMut(f64) -> Result<Vec<Complex64>>,
{
    if a == b {
        return Ok(vec![Complex64::new(0.0, 0.0); dim]);
    }
    let mut panels = vec![(a, b, panel(&mut f, a, b, dim)?, 0u32)];
    loop {
        let mut total = vec![Complex64::new(0.0, 0.0); dim];
        let mut error_bound = 0.0;
        let mut worst: Option<usize> = None;
        for (i, (_, _, p, _)) in panels.iter().enumerate() {
            for (t, k) in total.iter_mut().zip(&p.kronrod) {
                *t += k;
            }
            if p.error <= 50.0 * f64::EPSILON * p.magnitude {
                continue;
            }
            error_bound += p.error;
            if worst.is_none_or(|w| panels[w].2.error < p.error) {
                worst = Some(i);
            }
        }
        let size = total.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let worst = match worst {
            Some(w) if error_bound > opts.rtol * (1.0 + size) => w,
            _ => return Ok(total),
        };
        let (lo, hi, _, depth) = panels.swap_remove(worst);
        if depth >= opts.max_depth {
            let estimate = total
                .iter()
                .copied()
                .max_by(|x, y| x.norm().total_cmp(&y.norm()))
                .unwrap_or_default();
            return Err(Error::QuadratureFailed { estimate, error_bound });
        }
        let mid = 0.5 * (lo + hi);
        panels.push((lo, mid, panel(&mut f, lo, mid, dim)?, depth + 1));
        panels.push((mid, hi, panel(&mut f, mid, hi, dim)?, depth + 1));
    }
}

/// Scalar form of [`integrate_vec`].
pub fn integrate<F>(mut f: F, a: f64, b: f64, opts: QuadratureOptions) -> Result<Complex64>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    integrate_vec(|x| f(x).map(|v| vec![v]), a, b, 1, opts).map(|v| v[0])
}
