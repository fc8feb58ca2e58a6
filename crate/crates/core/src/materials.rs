//! Dielectric and magnetic response of the two half-spaces, and the
//! interface quantities built from them.
//!
//! Frequencies are in reduced units (multiples of a reference frequency
//! chosen by the caller). A model can be evaluated anywhere in the closed
//! upper half of the complex frequency plane; the two cases used in practice
//! are real `ω` and imaginary `iξ`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative size below which a denominator is treated as an exact pole.
pub(crate) const POLE_TOLERANCE: f64 = 1e-12;

pub(crate) fn is_pole(denominator: Complex64, scale: f64) -> bool {
    denominator.norm() <= POLE_TOLERANCE * scale.max(1.0)
}

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Single Lorentz oscillator:
/// `ε(ω) = η + (ε₀ − η) ω_T² / (ω_T² − ω² − iωΓ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lorentz {
    /// Background (high-frequency) permittivity η.
    pub eta: f64,
    /// Static permittivity ε₀ = ε(0).
    pub eps0: f64,
    /// Transverse resonance ω_T.
    pub omega_t: f64,
    /// Damping Γ.
    pub gamma: f64,
    pub mu: Complex64,
}

impl Lorentz {
    pub fn new(eta: f64, eps0: f64, omega_t: f64, gamma: f64) -> Result<Self> {
        let m = Self {
            eta,
            eps0,
            omega_t,
            gamma,
            mu: ONE,
        };
        m.validate()?;
        Ok(m)
    }

    /// Builds the oscillator from its vacuum-interface surface-mode frequency
    /// instead of ω_T, with damping given as a fraction of ω_S.
    pub fn from_surface_mode(
        eta: f64,
        eps0: f64,
        omega_s: f64,
        gamma_over_omega_s: f64,
    ) -> Result<Self> {
        let ratio = ((eps0 + 1.0) / (eta + 1.0)).sqrt();
        Self::new(eta, eps0, omega_s / ratio, gamma_over_omega_s * omega_s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eta >= 1.0) {
            return Err(Error::invalid(
                "eta",
                format!("must be >= 1, got {}", self.eta),
            ));
        }
        if !(self.eps0 >= self.eta) {
            return Err(Error::invalid(
                "eps0",
                format!("must be >= eta ({}), got {}", self.eta, self.eps0),
            ));
        }
        if !(self.omega_t > 0.0 && self.omega_t.is_finite()) {
            return Err(Error::invalid("omega_t", "must be positive and finite"));
        }
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return Err(Error::invalid("gamma", "must be non-negative and finite"));
        }
        check_mu(self.mu)
    }

    /// Oscillator strength ε₀ − η.
    fn strength(&self) -> f64 {
        self.eps0 - self.eta
    }
}

fn check_mu(mu: Complex64) -> Result<()> {
    if !(mu.re.is_finite() && mu.im.is_finite()) || mu.norm() == 0.0 {
        return Err(Error::invalid("mu", "must be finite and nonzero"));
    }
    Ok(())
}

/// Permittivity/permeability model of a half-space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MaterialModel {
    Vacuum,
    Constant { eps: Complex64, mu: Complex64 },
    Lorentz(Lorentz),
}

impl MaterialModel {
    pub fn constant(eps: Complex64) -> Self {
        MaterialModel::Constant { eps, mu: ONE }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            MaterialModel::Vacuum => Ok(()),
            MaterialModel::Constant { eps, mu } => {
                if !(eps.re.is_finite() && eps.im.is_finite()) {
                    return Err(Error::invalid("eps", "must be finite"));
                }
                check_mu(*mu)
            }
            MaterialModel::Lorentz(l) => l.validate(),
        }
    }

    pub fn as_lorentz(&self) -> Option<&Lorentz> {
        match self {
            MaterialModel::Lorentz(l) => Some(l),
            _ => None,
        }
    }

    fn require_lorentz(&self, op: &str) -> Result<&Lorentz> {
        self.as_lorentz()
            .ok_or_else(|| Error::UnsupportedModel(format!("{op} needs a Lorentz model")))
    }

    /// Whether ε and μ are real at real frequencies.
    pub fn is_lossless(&self) -> bool {
        match self {
            MaterialModel::Vacuum => true,
            MaterialModel::Constant { eps, mu } => eps.im == 0.0 && mu.im == 0.0,
            MaterialModel::Lorentz(l) => l.gamma == 0.0 && l.mu.im == 0.0,
        }
    }
}

/// Permittivity at complex frequency `omega` (Im ω ≥ 0).
pub fn eval_eps(m: &MaterialModel, omega: Complex64) -> Result<Complex64> {
    m.validate()?;
    match m {
        MaterialModel::Vacuum => Ok(ONE),
        MaterialModel::Constant { eps, .. } => Ok(*eps),
        MaterialModel::Lorentz(l) => {
            if omega.im < 0.0 {
                return Err(Error::invalid(
                    "omega",
                    "must lie in the closed upper half-plane",
                ));
            }
            let wt2 = l.omega_t * l.omega_t;
            if omega.re == 0.0 {
                // ω = iξ: the continuation is real, η + (ε₀−η)ω_T²/(ω_T² + ξ² + ξΓ).
                let xi = omega.im;
                let eps = l.eta + l.strength() * wt2 / (wt2 + xi * xi + xi * l.gamma);
                return Ok(Complex64::new(eps, 0.0));
            }
            let denom = wt2 - omega * omega - Complex64::i() * omega * l.gamma;
            if is_pole(denom, wt2) {
                return Err(Error::singular(format!(
                    "undamped Lorentz resonance at omega = {omega}"
                )));
            }
            Ok(l.eta + l.strength() * wt2 / denom)
        }
    }
}

/// Permeability; frequency independent for every supported model.
pub fn eval_mu(m: &MaterialModel, _omega: Complex64) -> Complex64 {
    match m {
        MaterialModel::Vacuum => ONE,
        MaterialModel::Constant { mu, .. } => *mu,
        MaterialModel::Lorentz(l) => l.mu,
    }
}

/// Refractive index `√(εμ)` on the passive branch (Im n ≥ 0, and Re n ≥ 0 when real).
pub(crate) fn refractive_index(eps: Complex64, mu: Complex64) -> Complex64 {
    upper_branch_sqrt(eps * mu)
}

/// Square root with Im ≥ 0; for purely real results, Re ≥ 0.
pub(crate) fn upper_branch_sqrt(z: Complex64) -> Complex64 {
    let s = z.sqrt();
    if s.im < 0.0 || (s.im == 0.0 && s.re < 0.0) {
        -s
    } else {
        s
    }
}

/// Two half-spaces joined at `z = 0`: `upper` fills `z > 0`, `lower` fills `z < 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfSpaceSystem {
    pub upper: MaterialModel,
    pub lower: MaterialModel,
    /// Highest frequency for which the near-field treatment is trusted.
    pub omega_max: f64,
}

impl HalfSpaceSystem {
    pub fn new(upper: MaterialModel, lower: MaterialModel, omega_max: f64) -> Result<Self> {
        let sys = Self {
            upper,
            lower,
            omega_max,
        };
        sys.validate()?;
        Ok(sys)
    }

    /// Vacuum above a dispersive medium.
    pub fn vacuum_over(lower: MaterialModel) -> Result<Self> {
        Self::new(MaterialModel::Vacuum, lower, default_omega_max(&lower))
    }

    pub fn validate(&self) -> Result<()> {
        self.upper.validate()?;
        self.lower.validate()?;
        if !(self.omega_max > 0.0) {
            return Err(Error::invalid("omega_max", "must be positive"));
        }
        Ok(())
    }

    /// `(ε, ε_m)` at `omega`.
    pub fn eps_pair(&self, omega: Complex64) -> Result<(Complex64, Complex64)> {
        Ok((eval_eps(&self.upper, omega)?, eval_eps(&self.lower, omega)?))
    }

    /// The Lorentz half-space facing vacuum, if the system has that form.
    pub fn lorentz_against_vacuum(&self) -> Option<&Lorentz> {
        match (&self.upper, &self.lower) {
            (MaterialModel::Vacuum, MaterialModel::Lorentz(l))
            | (MaterialModel::Lorentz(l), MaterialModel::Vacuum) => Some(l),
            _ => None,
        }
    }
}

fn default_omega_max(m: &MaterialModel) -> f64 {
    match m {
        MaterialModel::Lorentz(l) => 3.0 * cavity_mode_freq_unchecked(l),
        _ => 1.0,
    }
}

/// Average permittivity `ε̄ = (ε + ε_m)/2`.
pub fn avg_eps(sys: &HalfSpaceSystem, omega: Complex64) -> Result<Complex64> {
    let (eps, eps_m) = sys.eps_pair(omega)?;
    Ok(0.5 * (eps + eps_m))
}

/// Onsager empty-cavity factor `3ε/(2ε + 1)`.
pub fn local_field_factor(eps: Complex64) -> Result<Complex64> {
    let denom = 2.0 * eps + 1.0;
    if is_pole(denom, eps.norm()) {
        return Err(Error::singular(format!(
            "local-field factor pole at eps = {eps}"
        )));
    }
    Ok(3.0 * eps / denom)
}

/// Vacuum-interface surface-mode frequency `ω_S = √((ε₀+1)/(η+1)) ω_T`.
pub fn surface_mode_freq(m: &MaterialModel) -> Result<f64> {
    let l = m.require_lorentz("surface_mode_freq")?;
    l.validate()?;
    Ok(((l.eps0 + 1.0) / (l.eta + 1.0)).sqrt() * l.omega_t)
}

/// Onsager-cavity mode frequency `ω_C = √((2ε₀+1)/(2η+1)) ω_T`.
pub fn cavity_mode_freq(m: &MaterialModel) -> Result<f64> {
    let l = m.require_lorentz("cavity_mode_freq")?;
    l.validate()?;
    Ok(cavity_mode_freq_unchecked(l))
}

fn cavity_mode_freq_unchecked(l: &Lorentz) -> f64 {
    ((2.0 * l.eps0 + 1.0) / (2.0 * l.eta + 1.0)).sqrt() * l.omega_t
}

/// `1/ε̄` for a Lorentz medium facing vacuum, written as a single resonance at ω_S:
/// `(2/(η+1)) (1 − ((ε₀−η)/(ε₀+1)) ω_S²/(ω_S² − ω² − iωΓ))`.
pub fn inv_avg_eps_resonant(m: &MaterialModel, omega: f64) -> Result<Complex64> {
    let l = m.require_lorentz("inv_avg_eps_resonant")?;
    let ws = surface_mode_freq(m)?;
    let ws2 = ws * ws;
    let denom = Complex64::new(ws2 - omega * omega, -omega * l.gamma);
    if is_pole(denom, ws2) {
        return Err(Error::singular("undamped surface-mode resonance"));
    }
    let weight = l.strength() / (l.eps0 + 1.0);
    Ok(2.0 / (l.eta + 1.0) * (1.0 - weight * ws2 / denom))
}

/// `D_m` for a Lorentz medium written as a single resonance at ω_C:
/// `(3/(2η+1)) (η + ((ε₀−η)/(2ε₀+1)) ω_C²/(ω_C² − ω² − iωΓ))`.
pub fn local_field_factor_resonant(m: &MaterialModel, omega: f64) -> Result<Complex64> {
    let l = m.require_lorentz("local_field_factor_resonant")?;
    let wc = cavity_mode_freq(m)?;
    let wc2 = wc * wc;
    let denom = Complex64::new(wc2 - omega * omega, -omega * l.gamma);
    if is_pole(denom, wc2) {
        return Err(Error::singular("undamped cavity-mode resonance"));
    }
    let weight = l.strength() / (2.0 * l.eps0 + 1.0);
    Ok(3.0 / (2.0 * l.eta + 1.0) * (l.eta + weight * wc2 / denom))
}

/// Named parameter sets.
pub mod presets {
    use super::*;

    /// Sapphire near its infrared surface-polariton resonance (λ_S = 12.21 µm).
    pub const SAPPHIRE_ETA: f64 = 2.71;
    pub const SAPPHIRE_EPS0: f64 = 6.57;
    pub const SAPPHIRE_GAMMA_OVER_OMEGA_S: f64 = 0.015;
    /// Surface-mode frequency in s⁻¹. Only meaningful relative to the
    /// caller's reference frequency.
    pub const SAPPHIRE_OMEGA_S_HZ: f64 = 1.54e14;

    /// `sapphire-ir` with ω_S placed at `omega_s` reduced units.
    pub fn sapphire_ir(omega_s: f64) -> Lorentz {
        Lorentz::from_surface_mode(
            SAPPHIRE_ETA,
            SAPPHIRE_EPS0,
            omega_s,
            SAPPHIRE_GAMMA_OVER_OMEGA_S,
        )
        .expect("sapphire preset parameters are valid")
    }

    /// Resolves a preset name for a reference frequency `omega_ref` (s⁻¹).
    pub fn by_name(name: &str, omega_ref: f64) -> Option<MaterialModel> {
        match name {
            "vacuum" => Some(MaterialModel::Vacuum),
            "sapphire-ir" => Some(MaterialModel::Lorentz(sapphire_ir(
                SAPPHIRE_OMEGA_S_HZ / omega_ref,
            ))),
            _ => None,
        }
    }

    pub const NAMES: &[&str] = &["vacuum", "sapphire-ir"];
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn sapphire() -> MaterialModel {
        MaterialModel::Lorentz(presets::sapphire_ir(1.0))
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lorentz_limits() {
        let m = sapphire();
        assert_eq!(eval_eps(&m, c(0.0, 0.0)).unwrap(), c(6.57, 0.0));
        let far = eval_eps(&m, c(1e9, 0.0)).unwrap();
        assert_relative_eq!(far.re, 2.71, epsilon = 1e-12);
        assert!(far.im.abs() < 1e-12);
    }

    #[test]
    fn lorentz_at_surface_mode() {
        // Independent evaluation of the rational form with ω_T = ω_S/√(7.57/3.71), Γ = 0.015.
        let wt = 1.0 / (7.57f64 / 3.71).sqrt();
        let wt2 = wt * wt;
        let g = 0.015;
        let den_re = wt2 - 1.0;
        let den_im = -g;
        let mag = den_re * den_re + den_im * den_im;
        let expect_re = 2.71 + 3.86 * wt2 * den_re / mag;
        let expect_im = -3.86 * wt2 * den_im / mag;
        let eps = eval_eps(&sapphire(), c(1.0, 0.0)).unwrap();
        assert_relative_eq!(eps.re, expect_re, max_relative = 1e-13);
        assert_relative_eq!(eps.im, expect_im, max_relative = 1e-13);
        assert!((eps.re + 1.00).abs() < 0.01 && (eps.im - 0.11).abs() < 0.01);
    }

    #[test]
    fn imaginary_axis_is_real() {
        let eps = eval_eps(&sapphire(), c(0.0, 0.8)).unwrap();
        assert_eq!(eps.im, 0.0);
        assert!(eps.re > 2.71 && eps.re < 6.57);
    }

    #[test]
    fn vacuum_matches_unit_constant() {
        let k = MaterialModel::constant(c(1.0, 0.0));
        for w in [c(0.3, 0.0), c(0.0, 2.0), c(5.0, 0.1)] {
            assert_eq!(
                eval_eps(&MaterialModel::Vacuum, w).unwrap(),
                eval_eps(&k, w).unwrap()
            );
            assert_eq!(eval_mu(&MaterialModel::Vacuum, w), eval_mu(&k, w));
        }
    }

    #[test]
    fn permeabilities() {
        let w = c(1.0, 0.0);
        assert_eq!(eval_mu(&MaterialModel::Vacuum, w), ONE);
        let m = MaterialModel::Constant {
            eps: ONE,
            mu: c(2.0, 0.0),
        };
        assert_eq!(eval_mu(&m, w), c(2.0, 0.0));
        assert_eq!(eval_mu(&sapphire(), w), ONE);
    }

    #[test]
    fn average_permittivity() {
        let vv = HalfSpaceSystem::new(MaterialModel::Vacuum, MaterialModel::Vacuum, 1.0).unwrap();
        assert_eq!(avg_eps(&vv, c(0.7, 0.0)).unwrap(), ONE);
        let vk = HalfSpaceSystem::vacuum_over(MaterialModel::constant(c(-3.0, 0.0))).unwrap();
        assert_eq!(avg_eps(&vk, c(0.7, 0.0)).unwrap(), c(-1.0, 0.0));
        let vs = HalfSpaceSystem::vacuum_over(sapphire()).unwrap();
        let avg = avg_eps(&vs, c(1.0, 0.0)).unwrap();
        let eps = eval_eps(&sapphire(), c(1.0, 0.0)).unwrap();
        assert_eq!(avg, (1.0 + eps) / 2.0);
        assert!((avg.re - 0.0016).abs() < 1e-4 && (avg.im - 0.055).abs() < 1e-3);
    }

    #[test]
    fn local_field_factor_values() {
        assert_eq!(local_field_factor(ONE).unwrap(), ONE);
        assert_relative_eq!(
            local_field_factor(c(1e12, 0.0)).unwrap().re,
            1.5,
            epsilon = 1e-11
        );
        assert!(matches!(
            local_field_factor(c(-0.5, 0.0)),
            Err(Error::Singularity(_))
        ));
        let eps = eval_eps(&sapphire(), c(1.0, 0.0)).unwrap();
        let dm = local_field_factor(eps).unwrap().norm();
        assert!((dm - 3.0).abs() < 0.1, "|D_m(ω_S)| = {dm}");
    }

    #[test]
    fn mode_frequencies() {
        let m = sapphire();
        let l = m.as_lorentz().unwrap();
        let ws = surface_mode_freq(&m).unwrap();
        let wc = cavity_mode_freq(&m).unwrap();
        assert_relative_eq!(ws, 1.0, max_relative = 1e-14);
        assert_relative_eq!(
            ws / l.omega_t,
            (7.57f64 / 3.71).sqrt(),
            max_relative = 1e-14
        );
        assert!((ws / l.omega_t - 1.4284).abs() < 1e-4);
        assert!((wc / l.omega_t - 1.4841).abs() < 1e-4);
        assert!((wc / ws - 1.04).abs() < 0.005);

        let flat = MaterialModel::Lorentz(Lorentz::new(3.0, 3.0, 0.8, 0.01).unwrap());
        assert_relative_eq!(surface_mode_freq(&flat).unwrap(), 0.8);
        assert_relative_eq!(cavity_mode_freq(&flat).unwrap(), 0.8);

        assert!(matches!(
            surface_mode_freq(&MaterialModel::Vacuum),
            Err(Error::UnsupportedModel(_))
        ));
        assert!(matches!(
            cavity_mode_freq(&MaterialModel::constant(ONE)),
            Err(Error::UnsupportedModel(_))
        ));
    }

    #[test]
    fn absolute_preset_frequency() {
        let m = presets::by_name("sapphire-ir", 1.0).unwrap();
        let wt = m.as_lorentz().unwrap().omega_t;
        assert_relative_eq!(wt, 1.54e14 / 1.428_436_651_324_223_5, max_relative = 1e-12);
        assert!(presets::by_name("sapphire", 1.0).is_none());
    }

    #[test]
    fn resonant_inverse_average() {
        let m = sapphire();
        assert_relative_eq!(
            inv_avg_eps_resonant(&m, 0.0).unwrap().re,
            2.0 / 7.57,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            inv_avg_eps_resonant(&m, 1e9).unwrap().re,
            2.0 / 3.71,
            max_relative = 1e-9
        );
        let sys = HalfSpaceSystem::vacuum_over(m).unwrap();
        let direct = 1.0 / avg_eps(&sys, c(1.0, 0.0)).unwrap();
        let resonant = inv_avg_eps_resonant(&m, 1.0).unwrap();
        assert!((direct - resonant).norm() <= 1e-12 * direct.norm());
    }

    #[test]
    fn resonant_cavity_factor_matches_direct() {
        let m = sapphire();
        for w in [0.2, 0.9, 1.04, 1.7] {
            let direct = local_field_factor(eval_eps(&m, c(w, 0.0)).unwrap()).unwrap();
            let resonant = local_field_factor_resonant(&m, w).unwrap();
            assert!((direct - resonant).norm() <= 1e-12 * direct.norm());
        }
    }

    #[test]
    fn parameter_errors() {
        assert!(Lorentz::new(0.5, 2.0, 1.0, 0.0).is_err());
        assert!(Lorentz::new(3.0, 2.0, 1.0, 0.0).is_err());
        assert!(Lorentz::new(2.0, 3.0, 0.0, 0.0).is_err());
        assert!(Lorentz::new(2.0, 3.0, 1.0, -1.0).is_err());
        let bad = MaterialModel::Lorentz(Lorentz {
            eta: 5.0,
            eps0: 1.0,
            omega_t: 1.0,
            gamma: 0.0,
            mu: ONE,
        });
        assert!(matches!(
            eval_eps(&bad, c(0.5, 0.0)),
            Err(Error::InvalidParameter { .. })
        ));
        let lossless = MaterialModel::Lorentz(Lorentz::new(2.0, 3.0, 1.0, 0.0).unwrap());
        assert!(matches!(
            eval_eps(&lossless, c(1.0, 0.0)),
            Err(Error::Singularity(_))
        ));
        assert!(HalfSpaceSystem::new(MaterialModel::Vacuum, MaterialModel::Vacuum, 0.0).is_err());
    }
}
