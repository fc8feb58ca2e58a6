//! Lorentz permittivity of the sapphire preset and its interface modes.

use num_complex::Complex64;
use vdw::materials::{
    avg_eps, cavity_mode_freq, eval_eps, local_field_factor, presets, surface_mode_freq,
};
use vdw::{HalfSpaceSystem, MaterialModel};

fn main() -> vdw::Result<()> {
    let model = MaterialModel::Lorentz(presets::sapphire_ir(1.0));
    let sys = HalfSpaceSystem::vacuum_over(model)?;
    let ws = surface_mode_freq(&model)?;
    let wc = cavity_mode_freq(&model)?;
    println!("omega_T = {:.5}", model.as_lorentz().unwrap().omega_t);
    println!(
        "omega_S = {ws:.5}  omega_C = {wc:.5}  ratio = {:.4}",
        wc / ws
    );

    println!(
        "{:>8} {:>24} {:>24} {:>24}",
        "omega", "eps_m", "eps_avg", "D_m"
    );
    for i in 0..=10 {
        let w = 0.8 + 0.03 * i as f64;
        let eps = eval_eps(&model, Complex64::new(w, 0.0))?;
        let avg = avg_eps(&sys, Complex64::new(w, 0.0))?;
        let d = local_field_factor(eps)?;
        println!("{w:>8.3} {:>24.4} {:>24.4} {:>24.4}", eps, avg, d);
    }

    // imaginary axis: real, falling from eps0 to eta
    for xi in [0.0, 0.5, 1.0, 5.0, 50.0] {
        println!(
            "eps(i {xi}) = {:.4}",
            eval_eps(&model, Complex64::new(0.0, xi))?.re
        );
    }
    Ok(())
}
