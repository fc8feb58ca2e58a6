//! Locates and classifies the resonances of the scanned potential.

use vdw::materials::presets;
use vdw::{AtomParams, HalfSpaceSystem, MaterialModel, ScanSpec, SpectrumModel};

fn main() -> vdw::Result<()> {
    let sys = HalfSpaceSystem::vacuum_over(MaterialModel::Lorentz(presets::sapphire_ir(1.0)))?;
    let model = SpectrumModel::new(
        sys,
        AtomParams::new(1.0, 0.0, 1.0)?,
        AtomParams::new(0.9, 1e-3, 1.0)?,
    );
    let rows = model.scan(&ScanSpec::new(0.7, 1.3, 2000)?)?;
    for (kind, w) in model.mode_frequencies() {
        println!("expected {kind:?} at {w:.5}");
    }
    println!("window +/- {:.4}", model.classification_window());
    for p in model.find_peaks(&rows, 1e-10) {
        println!(
            "{:<16} at {:.8}  |u| = {:10.2}  fwhm = {:.5}",
            format!("{:?}", p.kind),
            p.location,
            p.height,
            p.width_fwhm
        );
    }
    Ok(())
}
