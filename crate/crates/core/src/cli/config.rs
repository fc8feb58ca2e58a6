//! JSON run configuration.
//!
//! Parsing is strict: unknown keys anywhere in the document are rejected
//! before any computation starts. All frequencies are in units of
//! `omega_ref` (s⁻¹), which only matters for presets quoted in absolute
//! units.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::greens::{max_index, AtomPositions};
use crate::interaction::AtomParams;
use crate::materials::{presets, surface_mode_freq, HalfSpaceSystem, Lorentz, MaterialModel};
use crate::quadrature::QuadratureSpec;
use crate::spectra::{ScanSpec, SpectrumModel};

use super::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Reference frequency in s⁻¹.
    pub omega_ref: f64,
    pub system: SystemSpec,
    pub atom_a: AtomParams,
    pub atom_b: AtomParams,
    /// Interatomic distance in units of `c/omega_ref`.
    #[serde(default = "default_separation")]
    pub separation: f64,
    pub scan: ScanSpec,
    #[serde(default)]
    pub quadrature: QuadratureSpec,
    pub output: OutputSpec,
    #[serde(default)]
    pub peaks: PeakSpec,
    #[serde(default)]
    pub validation: ValidationSpec,
}

fn default_separation() -> f64 {
    1e-3
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    pub upper: MaterialSpec,
    pub lower: MaterialSpec,
    #[serde(default)]
    pub omega_max: Option<f64>,
}

/// A half-space, either a named preset or explicit parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum MaterialSpec {
    Preset(String),
    Constant {
        eps: [f64; 2],
        #[serde(default)]
        mu: Option<[f64; 2]>,
    },
    Lorentz {
        eta: f64,
        eps0: f64,
        omega_t: f64,
        gamma: f64,
        #[serde(default)]
        mu: Option<[f64; 2]>,
    },
}

fn complex(pair: [f64; 2]) -> Complex64 {
    Complex64::new(pair[0], pair[1])
}

impl MaterialSpec {
    fn resolve(&self, field: &str, omega_ref: f64) -> Result<MaterialModel, CliError> {
        let model = match self {
            MaterialSpec::Preset(name) => presets::by_name(name, omega_ref).ok_or_else(|| {
                CliError::Config(format!(
                    "{field}.preset: unknown preset `{name}` (known: {})",
                    presets::NAMES.join(", ")
                ))
            })?,
            MaterialSpec::Constant { eps, mu } => MaterialModel::Constant {
                eps: complex(*eps),
                mu: complex(mu.unwrap_or([1.0, 0.0])),
            },
            MaterialSpec::Lorentz {
                eta,
                eps0,
                omega_t,
                gamma,
                mu,
            } => MaterialModel::Lorentz(Lorentz {
                eta: *eta,
                eps0: *eps0,
                omega_t: *omega_t,
                gamma: *gamma,
                mu: complex(mu.unwrap_or([1.0, 0.0])),
            }),
        };
        model
            .validate()
            .map_err(|e| CliError::Config(format!("{field}: {e}")))?;
        Ok(model)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    /// Output file; `-` writes to stdout.
    pub path: PathBuf,
    #[serde(default)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PeakSpec {
    pub refine_tol: f64,
}

impl Default for PeakSpec {
    fn default() -> Self {
        Self { refine_tol: 1e-10 }
    }
}

/// Nonretarded-limit check settings. Unset fields are derived from the
/// system: `omega` defaults to half the surface-mode frequency (or 0.5), the
/// base geometry puts both atoms on axis at `|z| n ω/c = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ValidationSpec {
    pub omega: Option<f64>,
    pub z_a: Option<f64>,
    pub z_b: Option<f64>,
    pub rho: f64,
    pub scales: Vec<f64>,
    pub tolerance: f64,
}

impl Default for ValidationSpec {
    fn default() -> Self {
        Self {
            omega: None,
            z_a: None,
            z_b: None,
            rho: 0.0,
            scales: vec![1e-1, 1e-2, 1e-3, 1e-4],
            tolerance: 0.01,
        }
    }
}

/// Validation inputs with every default filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationPlan {
    pub omega: f64,
    pub positions: AtomPositions,
    pub scales: Vec<f64>,
    pub tolerance: f64,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let inner = e.inner();
            CliError::Config(format!(
                "{}: {} (line {}, column {})",
                e.path(),
                inner,
                inner.line(),
                inner.column()
            ))
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let cfg = Self::from_json(&text)?;
        cfg.check()?;
        Ok(cfg)
    }

    /// Semantic validation of every embedded spec.
    pub fn check(&self) -> Result<(), CliError> {
        let bad = |field: &str, e: crate::Error| CliError::Config(format!("{field}: {e}"));
        if !(self.omega_ref > 0.0 && self.omega_ref.is_finite()) {
            return Err(CliError::Config("omega_ref: must be positive".into()));
        }
        self.system()?;
        self.atom_a.validate().map_err(|e| bad("atom_a", e))?;
        self.atom_b.validate().map_err(|e| bad("atom_b", e))?;
        if !(self.separation > 0.0) {
            return Err(CliError::Config("separation: must be positive".into()));
        }
        self.scan.validate().map_err(|e| bad("scan", e))?;
        self.quadrature
            .validate()
            .map_err(|e| bad("quadrature", e))?;
        if !(self.peaks.refine_tol > 0.0) {
            return Err(CliError::Config(
                "peaks.refine_tol: must be positive".into(),
            ));
        }
        let v = &self.validation;
        if v.scales.is_empty() {
            return Err(CliError::Config(
                "validation.scales: must not be empty".into(),
            ));
        }
        if !(v.tolerance > 0.0) {
            return Err(CliError::Config(
                "validation.tolerance: must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn system(&self) -> Result<HalfSpaceSystem, CliError> {
        let upper = self.system.upper.resolve("system.upper", self.omega_ref)?;
        let lower = self.system.lower.resolve("system.lower", self.omega_ref)?;
        let sys = match self.system.omega_max {
            Some(w) => HalfSpaceSystem::new(upper, lower, w),
            None => HalfSpaceSystem::vacuum_over(lower).map(|s| HalfSpaceSystem { upper, ..s }),
        };
        sys.map_err(|e| CliError::Config(format!("system: {e}")))
    }

    pub fn spectrum_model(&self) -> Result<SpectrumModel, CliError> {
        Ok(SpectrumModel {
            system: self.system()?,
            atom_a: self.atom_a,
            atom_b: self.atom_b,
            separation: self.separation,
            quadrature: self.quadrature,
        })
    }

    pub fn validation_plan(&self) -> Result<ValidationPlan, CliError> {
        let sys = self.system()?;
        let v = &self.validation;
        let omega = match v.omega {
            Some(w) => w,
            None => sys
                .lorentz_against_vacuum()
                .and_then(|l| surface_mode_freq(&MaterialModel::Lorentz(*l)).ok())
                .map_or(0.5, |ws| 0.5 * ws),
        };
        let model_err = |e: crate::Error| CliError::Config(format!("validation: {e}"));
        let depth = 1.0 / (max_index(&sys, omega).map_err(model_err)? * omega);
        let z_a = v.z_a.unwrap_or(depth);
        let z_b = v.z_b.unwrap_or(-depth);
        let positions =
            AtomPositions::new([v.rho, 0.0, z_a], [0.0, 0.0, z_b]).map_err(model_err)?;
        Ok(ValidationPlan {
            omega,
            positions,
            scales: v.scales.clone(),
            tolerance: v.tolerance,
        })
    }
}
