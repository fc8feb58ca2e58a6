//! Globally adaptive Gauss–Kronrod (G7/K15) quadrature for vector-valued
//! complex integrands.
//!
//! Every component shares the same panel subdivision, which keeps the Bessel
//! kernels of a Sommerfeld integral on a common set of nodes. The error of a
//! panel is the largest component-wise `|K15 − G7|` difference.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd Kronrod nodes XGK[1], XGK[3], XGK[5] and the centre.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Tolerances and budget for an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 0.0,
            max_panels: 10_000,
        }
    }
}

impl QuadratureSpec {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol >= 0.0 && self.abs_tol >= 0.0) {
            return Err(Error::invalid(
                "quadrature",
                "tolerances must be non-negative",
            ));
        }
        if self.rel_tol == 0.0 && self.abs_tol == 0.0 {
            return Err(Error::invalid(
                "quadrature",
                "rel_tol and abs_tol are both zero",
            ));
        }
        if self.max_panels == 0 {
            return Err(Error::invalid("quadrature.max_panels", "must be positive"));
        }
        Ok(())
    }
}

/// Value of a converged integral and its estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral<const N: usize> {
    pub value: [Complex64; N],
    pub error: f64,
    pub panels: usize,
}

struct Panel<const N: usize> {
    a: f64,
    b: f64,
    value: [Complex64; N],
    error: f64,
}

impl<const N: usize> PartialEq for Panel<N> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl<const N: usize> Eq for Panel<N> {}

impl<const N: usize> PartialOrd for Panel<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<const N: usize> Ord for Panel<N> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<const N: usize, F>(f: &F, a: f64, b: f64) -> Result<Panel<N>>
where
    F: Fn(f64) -> Result<[Complex64; N]>,
{
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let zero = Complex64::new(0.0, 0.0);
    let mut kronrod = [zero; N];
    let mut gauss = [zero; N];
    let mut magnitude = 0.0f64;

    let fc = f(centre)?;
    for c in 0..N {
        kronrod[c] += fc[c] * WGK[7];
        gauss[c] += fc[c] * WG[3];
        magnitude = magnitude.max(fc[c].norm() * WGK[7]);
    }
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let lo = f(centre - half * x)?;
        let hi = f(centre + half * x)?;
        for c in 0..N {
            let pair = lo[c] + hi[c];
            kronrod[c] += pair * w;
            if j % 2 == 1 {
                gauss[c] += pair * WG[j / 2];
            }
            magnitude = magnitude.max((lo[c].norm() + hi[c].norm()) * w);
        }
    }

    let mut error = 0.0f64;
    for c in 0..N {
        kronrod[c] *= half;
        gauss[c] *= half;
        error = error.max((kronrod[c] - gauss[c]).norm());
    }
    // Round-off floor: the rule cannot resolve below a few ulps of the panel's mass.
    error = error.max(50.0 * f64::EPSILON * magnitude * half.abs());
    if !error.is_finite() {
        return Err(Error::singular(format!(
            "non-finite integrand on [{a:e}, {b:e}]"
        )));
    }
    Ok(Panel {
        a,
        b,
        value: kronrod,
        error,
    })
}

/// Integrates `f` over the consecutive intervals delimited by `breaks`.
///
/// `breaks` must be strictly increasing with at least two entries; each
/// interval starts as its own panel. Integrand failures propagate unchanged.
pub fn integrate<const N: usize, F>(
    f: F,
    breaks: &[f64],
    spec: &QuadratureSpec,
) -> Result<Integral<N>>
where
    F: Fn(f64) -> Result<[Complex64; N]>,
{
    spec.validate()?;
    if breaks.len() < 2 || breaks.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::invalid(
            "breaks",
            "need at least two strictly increasing points",
        ));
    }

    let mut heap = BinaryHeap::new();
    let mut settled: Vec<Panel<N>> = Vec::new();
    for w in breaks.windows(2) {
        heap.push(gauss_kronrod(&f, w[0], w[1])?);
    }
    let mut panels = heap.len();

    loop {
        let (value, error) = totals(heap.iter().chain(settled.iter()));
        let scale = value.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let target = spec.abs_tol.max(spec.rel_tol * scale);
        if error <= target {
            return Ok(Integral {
                value,
                error,
                panels,
            });
        }

        let Some(worst) = heap.pop() else {
            return Err(Error::Quadrature { error, panels });
        };
        if panels + 1 > spec.max_panels {
            heap.push(worst);
            return Err(Error::Quadrature { error, panels });
        }
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            settled.push(worst);
            continue;
        }
        heap.push(gauss_kronrod(&f, worst.a, mid)?);
        heap.push(gauss_kronrod(&f, mid, worst.b)?);
        panels += 1;
    }
}

fn totals<'a, const N: usize>(panels: impl Iterator<Item = &'a Panel<N>>) -> ([Complex64; N], f64) {
    let mut value = [Complex64::new(0.0, 0.0); N];
    let mut error = 0.0;
    for p in panels {
        for (v, pv) in value.iter_mut().zip(&p.value) {
            *v += pv;
        }
        error += p.error;
    }
    (value, error)
}

/// Scalar real convenience wrapper over [`integrate`].
pub fn integrate_real<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let out = integrate(|x| Ok([Complex64::new(f(x)?, 0.0)]), &[a, b], spec)?;
    Ok((out.value[0].re, out.error))
}
