//! Resonant potential of an excited atom above sapphire facing a ground-state
//! atom below it, swept over the excited atom's transition frequency.
//! Writes CSV to stdout.

use vdw::materials::presets;
use vdw::{AtomParams, HalfSpaceSystem, MaterialModel, ScanSpec, SpectrumModel};

fn main() -> vdw::Result<()> {
    let sys = HalfSpaceSystem::vacuum_over(MaterialModel::Lorentz(presets::sapphire_ir(1.0)))?;
    let model = SpectrumModel::new(
        sys,
        AtomParams::new(1.0, 0.0, 1.0)?,
        AtomParams::new(0.9, 1e-3, 1.0)?,
    );
    let rows = model.scan(&ScanSpec::new(0.7, 1.3, 600)?)?;
    println!("omega,u_resonant,u_resonant_no_lf");
    for r in &rows {
        println!(
            "{},{},{}",
            r.omega_a,
            r.u_resonant,
            r.u_resonant_no_lf.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
