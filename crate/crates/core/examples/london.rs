//! Off-resonant (imaginary-frequency) part of the potential. In vacuum it
//! reduces to the London formula.

use std::f64::consts::PI;

use vdw::interaction::{offresonant_potential, resonant_potential};
use vdw::materials::presets;
use vdw::{AtomParams, HalfSpaceSystem, Level, MaterialModel, QuadratureSpec};

fn main() -> vdw::Result<()> {
    let quad = QuadratureSpec::with_rel_tol(1e-10);
    let a = AtomParams::new(0.7, 0.0, 1.3)?;
    let b = AtomParams::new(1.1, 0.0, 0.8)?;

    let vacuum = HalfSpaceSystem::new(MaterialModel::Vacuum, MaterialModel::Vacuum, 10.0)?;
    let got = offresonant_potential(&vacuum, &a, &b, 0.01, &quad)?;
    let london = -(3.0 / PI) * 1.3 * 0.8 * (PI / 2.0) * 0.7 * 1.1 / (0.7 + 1.1) / (2.0 * 0.8);
    println!(
        "vacuum: {:.12} +/- {:.1e}, London {london:.12}",
        got.value, got.error
    );

    let sapphire = HalfSpaceSystem::vacuum_over(MaterialModel::Lorentz(presets::sapphire_ir(1.0)))?;
    let off = offresonant_potential(&sapphire, &a, &b, 0.01, &quad)?;
    let mut excited = a;
    excited.level = Level::Excited;
    let flipped = offresonant_potential(&sapphire, &excited, &b, 0.01, &quad)?;
    let on = resonant_potential(&sapphire, &a.with_omega0(1.0), &b, 0.01)?;
    println!(
        "sapphire: off-resonant {:.6} (excited sign {:.6})",
        off.value, flipped.value
    );
    println!(
        "resonant part at omega_S for comparison: {:.1}",
        on.u_resonant
    );
    Ok(())
}
