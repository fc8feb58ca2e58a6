//! Atom models and the van der Waals interaction between an excited atom A
//! (above the interface) and a ground-state atom B (below it).
//!
//! Potentials are returned in units of `U₀ = 2|d_A|² α_B(0)/R⁶`, the
//! near-static free-space value; the enhancement factor
//! `g(ω_A) = |D D_m/ε̄|²` is the ratio of the interface potential to the
//! free-space one at the same transition frequency.

use std::f64::consts::PI;

use log::warn;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::greens::{nonretarded_prefactor, AtomPositions};
use crate::materials::{
    eval_eps, is_pole, local_field_factor, surface_mode_freq, HalfSpaceSystem, MaterialModel,
};
use crate::quadrature::{integrate_real, QuadratureSpec};
use crate::tensor::{self, Vec3};

/// ħ in the reduced unit system. Only the off-resonant potential depends on it.
pub const HBAR_REDUCED: f64 = 1.0;

/// Which state the polarizability refers to. A two-level atom in its excited
/// state responds with the opposite sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Level {
    #[default]
    Ground,
    Excited,
}

impl Level {
    fn sign(self) -> f64 {
        match self {
            Level::Ground => 1.0,
            Level::Excited => -1.0,
        }
    }
}

fn default_dipole_weight() -> f64 {
    1.0
}

/// Two-level isotropic atom.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomParams {
    /// Transition frequency.
    pub omega0: f64,
    /// Linewidth.
    pub gamma: f64,
    /// Static polarizability α(0).
    pub alpha0: f64,
    /// Squared transition dipole |d_eg|².
    #[serde(default = "default_dipole_weight")]
    pub dipole_weight: f64,
    /// State used for the imaginary-frequency polarizability in the
    /// off-resonant integral.
    #[serde(default)]
    pub level: Level,
}

impl AtomParams {
    pub fn new(omega0: f64, gamma: f64, alpha0: f64) -> Result<Self> {
        let a = Self {
            omega0,
            gamma,
            alpha0,
            dipole_weight: 1.0,
            level: Level::Ground,
        };
        a.validate()?;
        Ok(a)
    }

    pub fn with_omega0(self, omega0: f64) -> Self {
        Self { omega0, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega0 > 0.0 && self.omega0.is_finite()) {
            return Err(Error::invalid("omega0", "must be positive"));
        }
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return Err(Error::invalid("gamma", "must be non-negative"));
        }
        if !(self.alpha0 > 0.0 && self.alpha0.is_finite()) {
            return Err(Error::invalid("alpha0", "must be positive"));
        }
        if !(self.dipole_weight > 0.0 && self.dipole_weight.is_finite()) {
            return Err(Error::invalid("dipole_weight", "must be positive"));
        }
        Ok(())
    }
}

/// Ground-state polarizability `α(0) ω₀²/(ω₀² − ω² − iωγ)`.
pub fn polarizability(a: &AtomParams, omega: Complex64) -> Result<Complex64> {
    a.validate()?;
    let w02 = a.omega0 * a.omega0;
    if omega.re == 0.0 {
        let xi = omega.im;
        return Ok(Complex64::new(
            a.alpha0 * w02 / (w02 + xi * xi + xi * a.gamma),
            0.0,
        ));
    }
    let denom = w02 - omega * omega - Complex64::i() * omega * a.gamma;
    if is_pole(denom, w02) {
        return Err(Error::singular(format!(
            "undamped atomic resonance at omega = {omega}"
        )));
    }
    Ok(a.alpha0 * w02 / denom)
}

/// Enhancement of the interface potential over free space at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Enhancement {
    /// `|D D_m/ε̄|²`.
    pub g: f64,
    /// `|1/ε̄|²`, the same quantity without the Onsager cavity factors.
    pub g_no_lf: f64,
}

impl Enhancement {
    /// `g/g_no_lf = |D D_m|²`.
    pub fn local_field_gain(&self) -> f64 {
        self.g / self.g_no_lf
    }
}

/// `g(ω_A) = |18 ε ε_m / ((ε + ε_m)(2ε + 1)(2ε_m + 1))|²` and its
/// local-field-free counterpart.
pub fn enhancement_factor(sys: &HalfSpaceSystem, omega_a: f64) -> Result<Enhancement> {
    if !(omega_a > 0.0 && omega_a.is_finite()) {
        return Err(Error::invalid("omega_a", "must be positive"));
    }
    let (eps, eps_m) = sys.eps_pair(Complex64::new(omega_a, 0.0))?;
    let sum = eps + eps_m;
    if is_pole(sum, eps.norm().max(eps_m.norm())) {
        return Err(Error::singular(format!(
            "average permittivity vanishes at omega_a = {omega_a}"
        )));
    }
    let lf = local_field_factor(eps)? * local_field_factor(eps_m)?;
    let inv_avg = 2.0 / sum;
    Ok(Enhancement {
        g: (lf * inv_avg).norm_sqr(),
        g_no_lf: inv_avg.norm_sqr(),
    })
}

/// Small-damping estimate of `g(ω_S)`:
/// `4(ε₀−η)²/((η+1)²(ε₀+1)²) · ω_S²/Γ² · |D_m(ω_S)|²`.
pub fn peak_enhancement_estimate(m: &MaterialModel) -> Result<f64> {
    let l = m
        .as_lorentz()
        .ok_or_else(|| Error::UnsupportedModel("peak estimate needs a Lorentz model".into()))?;
    let ws = surface_mode_freq(m)?;
    if l.gamma == 0.0 {
        return Err(Error::singular("peak estimate diverges for zero damping"));
    }
    let strength = l.eps0 - l.eta;
    let coupling = 4.0 * strength * strength / ((l.eta + 1.0).powi(2) * (l.eps0 + 1.0).powi(2));
    let dm = local_field_factor(eval_eps(m, Complex64::new(ws, 0.0))?)?;
    Ok(coupling * (ws / l.gamma).powi(2) * dm.norm_sqr())
}

/// Interaction potential in units of `U₀`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PotentialResult {
    /// Resonant part `U^r/U₀`.
    pub u_resonant: f64,
    /// Resonant part with the local-field factors removed.
    pub u_resonant_no_lf: f64,
    /// Off-resonant part `U^or/U₀`, when requested.
    pub u_offresonant: Option<f64>,
    pub g: f64,
    pub g_no_localfield: f64,
}

/// `U₀ = 2|d_A|² α_B(0)/R⁶`, the unit of every returned potential.
pub fn reference_potential(atom_a: &AtomParams, atom_b: &AtomParams, r: f64) -> f64 {
    2.0 * atom_a.dipole_weight * atom_b.alpha0 / r.powi(6)
}

/// Resonant potential `U/U₀ = −(Re α_B(ω_A)/α_B(0)) g(ω_A)` at separation `r`.
///
/// The reduced potential does not depend on `r`; the absolute value is
/// `u_resonant · reference_potential(..)`. `r` is only used to flag
/// geometries outside the near-field window.
pub fn resonant_potential(
    sys: &HalfSpaceSystem,
    atom_a: &AtomParams,
    atom_b: &AtomParams,
    r: f64,
) -> Result<PotentialResult> {
    atom_a.validate()?;
    atom_b.validate()?;
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::invalid("r", "must be positive"));
    }
    let w = atom_a.omega0;
    if w > sys.omega_max || sys.omega_max * r >= 1.0 {
        warn!(
            "omega_a = {w}, R = {r}: outside the nonretarded window (omega_max = {})",
            sys.omega_max
        );
    }
    let enh = enhancement_factor(sys, w)?;
    let response = polarizability(atom_b, Complex64::new(w, 0.0))?.re / atom_b.alpha0;
    Ok(PotentialResult {
        u_resonant: -response * enh.g,
        u_resonant_no_lf: -response * enh.g_no_lf,
        u_offresonant: None,
        g: enh.g,
        g_no_localfield: enh.g_no_lf,
    })
}

/// Off-resonant potential and its quadrature error estimate, both in units of `U₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OffResonant {
    pub value: f64,
    pub error: f64,
}

/// Off-resonant potential
/// `U^or = −(ħ/2π) ∫₀^∞ dξ ξ⁴ α_A(iξ) α_B(iξ) Tr[G(r_A,r_B;iξ)·G(r_B,r_A;iξ)]`
/// with the nonretarded Green function, so that `ξ⁴ Tr[G·G] = 6(D D_m/ε̄)²/R⁶`.
/// The semi-infinite range is mapped onto `[0, 1)` by `ξ = t/(1 − t)`.
pub fn offresonant_potential(
    sys: &HalfSpaceSystem,
    atom_a: &AtomParams,
    atom_b: &AtomParams,
    r: f64,
    quad: &QuadratureSpec,
) -> Result<OffResonant> {
    atom_a.validate()?;
    atom_b.validate()?;
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::invalid("r", "must be positive"));
    }
    let integrand = |t: f64| -> Result<f64> {
        let xi = t / (1.0 - t);
        let jac = 1.0 / ((1.0 - t) * (1.0 - t));
        let w = Complex64::new(0.0, xi);
        let alphas = atom_a.level.sign()
            * atom_b.level.sign()
            * polarizability(atom_a, w)?.re
            * polarizability(atom_b, w)?.re;
        // ξ⁴ Tr[G·G] R⁶ = 6 ξ⁴ P², with P the scalar prefactor of (3R̂R̂ − I)/R³.
        let p = nonretarded_prefactor(sys, w)?;
        let trace = 6.0 * (p * p).re * xi.powi(4);
        Ok(alphas * trace * jac)
    };
    let (integral, error) = integrate_real(integrand, 0.0, 1.0, quad)?;
    let scale = -HBAR_REDUCED / (2.0 * PI) / (2.0 * atom_a.dipole_weight * atom_b.alpha0);
    Ok(OffResonant {
        value: scale * integral,
        error: scale.abs() * error,
    })
}

/// Forces on atoms A and B, `F_A = −12 Re[α_B(ω_A)] |d_A|² g(ω_A) R̂/R⁷ = −F_B`.
pub fn force(
    sys: &HalfSpaceSystem,
    atom_a: &AtomParams,
    atom_b: &AtomParams,
    pos: &AtomPositions,
) -> Result<(Vec3, Vec3)> {
    atom_a.validate()?;
    atom_b.validate()?;
    let sep = pos.separation();
    let r = tensor::norm(&sep);
    let g = enhancement_factor(sys, atom_a.omega0)?.g;
    let re_alpha = polarizability(atom_b, Complex64::new(atom_a.omega0, 0.0))?.re;
    let magnitude = -12.0 * re_alpha * atom_a.dipole_weight * g / r.powi(7);
    let f_a = tensor::scale(&sep, magnitude / r);
    Ok((f_a, tensor::scale(&f_a, -1.0)))
}
