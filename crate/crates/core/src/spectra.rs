//! Transition-frequency scans and resonance peak detection.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interaction::{offresonant_potential, resonant_potential, AtomParams, PotentialResult};
use crate::materials::{cavity_mode_freq, surface_mode_freq, HalfSpaceSystem, MaterialModel};
use crate::quadrature::QuadratureSpec;

fn yes() -> bool {
    true
}

/// Uniform grid of excited-atom transition frequencies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSpec {
    pub omega_min: f64,
    pub omega_max: f64,
    pub n_points: usize,
    #[serde(default)]
    pub include_offresonant: bool,
    #[serde(default = "yes")]
    pub include_no_lf_curve: bool,
}

impl ScanSpec {
    pub fn new(omega_min: f64, omega_max: f64, n_points: usize) -> Result<Self> {
        let s = Self {
            omega_min,
            omega_max,
            n_points,
            include_offresonant: false,
            include_no_lf_curve: true,
        };
        s.validate()?;
        Ok(s)
    }

    /// 2000 points over `[0.5, 1.5] ω_S`.
    pub fn around_surface_mode(omega_s: f64) -> Self {
        Self {
            omega_min: 0.5 * omega_s,
            omega_max: 1.5 * omega_s,
            n_points: 2000,
            include_offresonant: false,
            include_no_lf_curve: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega_min > 0.0 && self.omega_min < self.omega_max && self.omega_max.is_finite())
        {
            return Err(Error::invalid("scan", "need 0 < omega_min < omega_max"));
        }
        if self.n_points < 2 {
            return Err(Error::invalid("scan.n_points", "need at least 2 points"));
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        let step = (self.omega_max - self.omega_min) / (self.n_points - 1) as f64;
        (0..self.n_points)
            .map(|i| {
                if i + 1 == self.n_points {
                    self.omega_max
                } else {
                    self.omega_min + step * i as f64
                }
            })
            .collect()
    }
}

/// One sample of a scan. Rows that hit an exact singularity carry NaN values
/// and `singular = true`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumRow {
    pub omega_a: f64,
    pub u_resonant: f64,
    pub u_resonant_no_lf: Option<f64>,
    pub g: f64,
    pub g_no_lf: f64,
    pub u_offresonant: Option<f64>,
    pub singular: bool,
}

impl SpectrumRow {
    fn flagged(omega_a: f64) -> Self {
        Self {
            omega_a,
            u_resonant: f64::NAN,
            u_resonant_no_lf: None,
            g: f64::NAN,
            g_no_lf: f64::NAN,
            u_offresonant: None,
            singular: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PeakKind {
    SurfaceMode,
    CavityMode,
    AtomicResonance,
    Unclassified,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeakReport {
    pub location: f64,
    /// `|u_resonant|` at `location`.
    pub height: f64,
    pub width_fwhm: f64,
    pub kind: PeakKind,
}

/// A system and atom pair whose interaction is scanned over `ω_A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumModel {
    pub system: HalfSpaceSystem,
    /// Excited atom; its `omega0` is replaced by each grid frequency.
    pub atom_a: AtomParams,
    pub atom_b: AtomParams,
    /// Interatomic distance, used only by the off-resonant part and the
    /// validity warning.
    pub separation: f64,
    pub quadrature: QuadratureSpec,
}

impl SpectrumModel {
    pub fn new(system: HalfSpaceSystem, atom_a: AtomParams, atom_b: AtomParams) -> Self {
        Self {
            system,
            atom_a,
            atom_b,
            separation: 1e-3,
            quadrature: QuadratureSpec::default(),
        }
    }

    pub fn evaluate(&self, omega_a: f64) -> Result<PotentialResult> {
        resonant_potential(
            &self.system,
            &self.atom_a.with_omega0(omega_a),
            &self.atom_b,
            self.separation,
        )
    }

    fn row(&self, omega_a: f64, spec: &ScanSpec) -> Result<SpectrumRow> {
        let p = match self.evaluate(omega_a) {
            Ok(p) => p,
            Err(Error::Singularity(_)) => return Ok(SpectrumRow::flagged(omega_a)),
            Err(e) => return Err(e),
        };
        let u_offresonant = if spec.include_offresonant {
            let atom_a = self.atom_a.with_omega0(omega_a);
            match offresonant_potential(
                &self.system,
                &atom_a,
                &self.atom_b,
                self.separation,
                &self.quadrature,
            ) {
                Ok(v) => Some(v.value),
                Err(Error::Singularity(_)) => return Ok(SpectrumRow::flagged(omega_a)),
                Err(e) => return Err(e),
            }
        } else {
            None
        };
        Ok(SpectrumRow {
            omega_a,
            u_resonant: p.u_resonant,
            u_resonant_no_lf: spec.include_no_lf_curve.then_some(p.u_resonant_no_lf),
            g: p.g,
            g_no_lf: p.g_no_localfield,
            u_offresonant,
            singular: false,
        })
    }

    /// Evaluates every grid point, in parallel, returning rows in grid order.
    pub fn scan(&self, spec: &ScanSpec) -> Result<Vec<SpectrumRow>> {
        spec.validate()?;
        spec.grid()
            .into_par_iter()
            .map(|w| self.row(w, spec))
            .collect()
    }

    /// Known resonances of the system: ω_S and ω_C when a Lorentz medium faces
    /// vacuum, and the ground-state atom's transition.
    pub fn mode_frequencies(&self) -> Vec<(PeakKind, f64)> {
        let mut modes = Vec::new();
        if let Some(l) = self.system.lorentz_against_vacuum() {
            let m = MaterialModel::Lorentz(*l);
            if let (Ok(ws), Ok(wc)) = (surface_mode_freq(&m), cavity_mode_freq(&m)) {
                modes.push((PeakKind::SurfaceMode, ws));
                modes.push((PeakKind::CavityMode, wc));
            }
        }
        modes.push((PeakKind::AtomicResonance, self.atom_b.omega0));
        modes
    }

    /// Half-width of the classification window: twice the medium damping,
    /// or twice the atomic linewidth without a dispersive medium.
    pub fn classification_window(&self) -> f64 {
        let damping = [self.system.upper, self.system.lower]
            .iter()
            .filter_map(|m| m.as_lorentz().map(|l| l.gamma))
            .fold(0.0, f64::max);
        if damping > 0.0 {
            2.0 * damping
        } else {
            2.0 * self.atom_b.gamma
        }
    }

    fn classify(&self, location: f64) -> PeakKind {
        let window = self.classification_window();
        self.mode_frequencies()
            .into_iter()
            .map(|(kind, w)| (kind, (location - w).abs()))
            .filter(|&(_, d)| d < window)
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map_or(PeakKind::Unclassified, |(kind, _)| kind)
    }

    fn metric(&self, omega_a: f64) -> f64 {
        self.evaluate(omega_a)
            .map_or(f64::NEG_INFINITY, |p| p.u_resonant.abs())
    }

    /// Strict local maxima of `|u_resonant|` on the grid, refined by
    /// golden-section search to relative tolerance `refine_tol` and
    /// classified against the known mode frequencies. Peaks of the same
    /// classified kind are merged into the tallest one.
    pub fn find_peaks(&self, rows: &[SpectrumRow], refine_tol: f64) -> Vec<PeakReport> {
        let values: Vec<f64> = rows
            .iter()
            .map(|r| {
                if r.singular {
                    f64::NAN
                } else {
                    r.u_resonant.abs()
                }
            })
            .collect();
        let mut peaks: Vec<PeakReport> = Vec::new();
        for i in local_maxima(&values) {
            let (lo, hi) = (rows[i - 1].omega_a, rows[i + 1].omega_a);
            let (mut location, mut height) = refine_max(|w| self.metric(w), lo, hi, refine_tol);
            if !(height >= values[i]) {
                location = rows[i].omega_a;
                height = values[i];
            }
            let width_fwhm = half_maximum_width(rows, &values, i, height);
            let kind = self.classify(location);
            let peak = PeakReport {
                location,
                height,
                width_fwhm,
                kind,
            };
            let same = (kind != PeakKind::Unclassified)
                .then(|| peaks.iter_mut().find(|p| p.kind == kind))
                .flatten();
            match same {
                Some(existing) if existing.height < height => *existing = peak,
                Some(_) => {}
                None => peaks.push(peak),
            }
        }
        peaks
    }
}

/// Indices of strict interior local maxima; NaN samples never qualify.
pub fn local_maxima(values: &[f64]) -> Vec<usize> {
    if values.len() < 3 {
        return Vec::new();
    }
    (1..values.len() - 1)
        .filter(|&i| values[i] > values[i - 1] && values[i] > values[i + 1])
        .collect()
}

/// Maximiser of `f` on `[lo, hi]`, assuming unimodality, to relative tolerance `tol`.
pub fn golden_section_max<F: Fn(f64) -> f64>(
    f: F,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    let tol = tol.max(4.0 * f64::EPSILON);
    for _ in 0..200 {
        if hi - lo <= tol * 0.5 * (lo.abs() + hi.abs()) {
            break;
        }
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Maximiser of a smooth `f` bracketed by `[lo, hi]`. Bisects on the sign of
/// a central difference, which resolves the vertex far below the `√ε` limit
/// of comparing function values; falls back to golden-section search when
/// the slope does not change sign across the bracket.
pub fn refine_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let slope = |x: f64| {
        let h = 1e-8 * x.abs().max(f64::MIN_POSITIVE);
        f(x + h) - f(x - h)
    };
    if !(slope(lo) > 0.0 && slope(hi) < 0.0) {
        return golden_section_max(f, lo, hi, tol);
    }
    let tol = tol.max(4.0 * f64::EPSILON);
    for _ in 0..200 {
        if hi - lo <= tol * 0.5 * (lo.abs() + hi.abs()) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if slope(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

/// Full width at half `height` around grid index `peak`, by linear
/// interpolation; truncated at the grid edges.
fn half_maximum_width(rows: &[SpectrumRow], values: &[f64], peak: usize, height: f64) -> f64 {
    let half = 0.5 * height;
    let crossing = |i: usize, j: usize| {
        let (wi, wj) = (rows[i].omega_a, rows[j].omega_a);
        let (vi, vj) = (values[i], values[j]);
        if vi == vj {
            wi
        } else {
            wi + (half - vi) * (wj - wi) / (vj - vi)
        }
    };
    let left = (0..peak)
        .rev()
        .find(|&i| values[i] < half)
        .map_or(rows[0].omega_a, |i| crossing(i, i + 1));
    let right = (peak + 1..values.len())
        .find(|&i| values[i] < half)
        .map_or(rows[values.len() - 1].omega_a, |i| crossing(i - 1, i));
    right - left
}

/// Ratio between the corrected and uncorrected resonant curves at `omega_a`,
/// which equals `|D D_m|²`.
pub fn local_field_ratio(sys: &HalfSpaceSystem, omega_a: f64) -> Result<f64> {
    Ok(crate::greens::local_field_product(sys, Complex64::new(omega_a, 0.0))?.norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::presets;

    fn pair_model() -> SpectrumModel {
        let sys = HalfSpaceSystem::vacuum_over(MaterialModel::Lorentz(presets::sapphire_ir(1.0)))
            .unwrap();
        let a = AtomParams::new(1.0, 0.0, 1.0).unwrap();
        let b = AtomParams::new(0.9, 1e-3, 1.0).unwrap();
        SpectrumModel::new(sys, a, b)
    }

    #[test]
    fn grid_endpoints_and_count() {
        let s = ScanSpec::new(0.7, 1.3, 2).unwrap();
        assert_eq!(s.grid(), vec![0.7, 1.3]);
        assert_eq!(pair_model().scan(&s).unwrap().len(), 2);
        assert!(ScanSpec::new(1.0, 0.5, 10).is_err());
        assert!(ScanSpec::new(0.5, 1.0, 1).is_err());
    }

    #[test]
    fn monotone_input_has_no_peaks() {
        assert!(local_maxima(&[1.0, 2.0, 3.0, 4.0]).is_empty());
        assert!(local_maxima(&[1.0, 1.0, 1.0]).is_empty());
        assert_eq!(local_maxima(&[0.0, 2.0, 1.0, 3.0, 0.0]), vec![1, 3]);
        assert!(local_maxima(&[0.0, f64::NAN, 0.0]).is_empty());
    }

    #[test]
    fn golden_section_finds_parabola_vertex() {
        let (x, fx) = golden_section_max(|x| -(x - 0.3).powi(2) + 2.0, 0.0, 1.0, 1e-12);
        // a quadratic top pins the abscissa only to ~√ε
        assert!((x - 0.3).abs() < 1e-7);
        assert!((fx - 2.0).abs() < 1e-15);
    }

    #[test]
    fn slope_bisection_beats_value_comparison() {
        // Lorentzian peak with its vertex off the bracket centre
        let f = |w: f64| 1.0 / ((w - 1.000_123_456_789).powi(2) + 1e-4);
        let (x, _) = refine_max(f, 0.99, 1.01, 1e-14);
        assert!((x - 1.000_123_456_789).abs() < 1e-12);
        let (y, _) = refine_max(|w: f64| w, 0.0, 1.0, 1e-10);
        assert!((y - 1.0).abs() < 1e-9);
    }

    #[test]
    fn lossless_singular_row_is_flagged() {
        let l = crate::materials::Lorentz::from_surface_mode(2.71, 6.57, 1.0, 0.0).unwrap();
        let sys = HalfSpaceSystem::vacuum_over(MaterialModel::Lorentz(l)).unwrap();
        let model = SpectrumModel::new(sys, pair_model().atom_a, pair_model().atom_b);
        let rows = model.scan(&ScanSpec::new(0.5, 1.5, 3).unwrap()).unwrap();
        assert!(!rows[0].singular);
        assert!(rows[1].singular && rows[1].g.is_nan());
        assert!(!rows[2].singular);
    }

    #[test]
    fn three_features_are_classified() {
        let model = pair_model();
        let rows = model.scan(&ScanSpec::new(0.7, 1.3, 2000).unwrap()).unwrap();
        let peaks = model.find_peaks(&rows, 1e-10);
        let kinds: Vec<PeakKind> = peaks
            .iter()
            .map(|p| p.kind)
            .filter(|k| *k != PeakKind::Unclassified)
            .collect();
        assert_eq!(
            kinds,
            vec![
                PeakKind::AtomicResonance,
                PeakKind::SurfaceMode,
                PeakKind::CavityMode
            ]
        );
        for p in &peaks {
            assert!(p.width_fwhm > 0.0);
        }
    }
}
