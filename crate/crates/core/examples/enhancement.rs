//! Interface enhancement of the resonant potential, with and without the
//! Onsager local-field factors.

use vdw::interaction::{enhancement_factor, peak_enhancement_estimate};
use vdw::materials::{cavity_mode_freq, presets, surface_mode_freq};
use vdw::{HalfSpaceSystem, MaterialModel};

fn main() -> vdw::Result<()> {
    let model = MaterialModel::Lorentz(presets::sapphire_ir(1.0));
    let sys = HalfSpaceSystem::vacuum_over(model)?;
    let ws = surface_mode_freq(&model)?;
    let wc = cavity_mode_freq(&model)?;

    for (name, w) in [
        ("surface mode", ws),
        ("cavity mode", wc),
        ("below", 0.8 * ws),
    ] {
        let e = enhancement_factor(&sys, w)?;
        println!(
            "{name:>12}: omega = {w:.5}  g = {:9.1}  g_no_lf = {:7.1}  |D D_m|^2 = {:.2}",
            e.g,
            e.g_no_lf,
            e.local_field_gain()
        );
    }
    println!(
        "small-damping estimate of g(omega_S): {:.1}",
        peak_enhancement_estimate(&model)?
    );

    let free = HalfSpaceSystem::new(MaterialModel::Vacuum, MaterialModel::Vacuum, 10.0)?;
    println!("vacuum: g = {}", enhancement_factor(&free, ws)?.g);
    Ok(())
}
