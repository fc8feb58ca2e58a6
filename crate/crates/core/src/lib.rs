//! Local-field corrected van der Waals interaction between an excited atom
//! and a ground-state atom on opposite sides of a planar interface.
//!
//! The library is organised bottom-up:
//!
//! - [`materials`]: permittivity models (vacuum, constant, Lorentz
//!   oscillator), the average permittivity of the interface, Onsager
//!   local-field factors and the surface/cavity mode frequencies.
//! - [`greens`]: the two-point Green function across the interface, both as
//!   a Sommerfeld integral and in closed nonretarded form.
//! - [`interaction`]: polarizabilities, resonant and off-resonant potentials,
//!   the enhancement factor `g(ω_A)` and the interatomic forces.
//! - [`spectra`]: scans over the excited atom's transition frequency and
//!   resonance peak detection.
//! - [`cli`]: JSON run configuration and the `vdw` command driver.
//!
//! All frequencies are in units of a reference frequency `ω_ref`, lengths in
//! units of `c/ω_ref`, and potentials in units of
//! `U₀ = 2|d_A|² α_B(0)/R⁶`.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod greens;
pub mod interaction;
pub mod materials;
pub mod quadrature;
pub mod spectra;
pub mod tensor;

pub use error::{Error, Result};
pub use greens::{AtomPositions, LocalField};
pub use interaction::{AtomParams, Level, PotentialResult};
pub use materials::{HalfSpaceSystem, Lorentz, MaterialModel};
pub use quadrature::QuadratureSpec;
pub use spectra::{PeakKind, PeakReport, ScanSpec, SpectrumModel, SpectrumRow};
pub use tensor::{ComplexTensor3, Vec3};
