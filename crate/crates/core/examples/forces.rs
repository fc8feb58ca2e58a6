//! Forces on the two atoms and a finite-difference check against the potential.

use vdw::interaction::{force, reference_potential, resonant_potential};
use vdw::materials::presets;
use vdw::{AtomParams, AtomPositions, HalfSpaceSystem, MaterialModel};

fn main() -> vdw::Result<()> {
    let sys = HalfSpaceSystem::vacuum_over(MaterialModel::Lorentz(presets::sapphire_ir(1.0)))?;
    let a = AtomParams::new(1.0, 0.0, 1.0)?;
    let b = AtomParams::new(0.9, 1e-3, 1.0)?;
    let pos = AtomPositions::new([0.01, 0.0, 0.02], [0.0, 0.005, -0.01])?;

    let (fa, fb) = force(&sys, &a, &b, &pos)?;
    println!("F_A = {fa:?}");
    println!("F_B = {fb:?}");

    let u = |r: f64| -> vdw::Result<f64> {
        Ok(resonant_potential(&sys, &a, &b, r)?.u_resonant * reference_potential(&a, &b, r))
    };
    let r = pos.distance();
    let h = 1e-5 * r;
    let du = (u(r + h)? - u(r - h)?) / (2.0 * h);
    let sep = pos.separation();
    let radial: f64 = (0..3).map(|i| fa[i] * sep[i] / r).sum();
    println!("F_A . R_hat = {radial:.8e}, -dU/dR = {:.8e}", -du);
    Ok(())
}
