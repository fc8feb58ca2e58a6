//! Shrinks a two-atom geometry across the vacuum/sapphire interface and
//! compares the retarded Sommerfeld integral with the closed near-field form.

use vdw::greens::{max_index, nonretarded_limit_check, sommerfeld_green};
use vdw::materials::presets;
use vdw::{AtomPositions, HalfSpaceSystem, LocalField, MaterialModel, QuadratureSpec};

fn main() -> vdw::Result<()> {
    let sys = HalfSpaceSystem::vacuum_over(MaterialModel::Lorentz(presets::sapphire_ir(1.0)))?;
    let omega = 0.5;
    let depth = 1.0 / (max_index(&sys, omega)? * omega);
    let pos = AtomPositions::new([0.5 * depth, 0.0, depth], [0.0, 0.0, -depth])?;
    let quad = QuadratureSpec::default();

    let g = sommerfeld_green(&sys, omega, &pos, &quad, LocalField::Included)?;
    println!("G at unit depth:");
    for row in g.0 {
        println!("  {:>22.5} {:>22.5} {:>22.5}", row[0], row[1], row[2]);
    }

    let report = nonretarded_limit_check(&sys, omega, &pos, &[1e-1, 1e-2, 1e-3, 1e-4], &quad)?;
    for r in &report.ratios {
        println!(
            "scale {:7.0e}  {}  ratio = {:.8}",
            r.scale,
            r.label(),
            r.ratio
        );
    }
    for o in &report.orders {
        println!("{o:?}");
    }
    println!(
        "monotone: {}, within 1%: {}",
        report.is_monotone(),
        report.passes(0.01)
    );
    Ok(())
}
