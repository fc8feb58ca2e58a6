use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use vdw::greens::{inverse_distance_integral, nonretarded_green, AtomPositions};
use vdw::interaction::{
    enhancement_factor, force, offresonant_potential, reference_potential, resonant_potential,
};
use vdw::materials::{
    avg_eps, cavity_mode_freq, eval_eps, inv_avg_eps_resonant, local_field_factor, presets,
    surface_mode_freq,
};
use vdw::spectra::local_field_ratio;
use vdw::{
    AtomParams, HalfSpaceSystem, Lorentz, MaterialModel, QuadratureSpec, ScanSpec, SpectrumModel,
};

fn sapphire_model() -> MaterialModel {
    MaterialModel::Lorentz(presets::sapphire_ir(1.0))
}

fn sapphire() -> HalfSpaceSystem {
    HalfSpaceSystem::vacuum_over(sapphire_model()).unwrap()
}

fn vacuum() -> HalfSpaceSystem {
    HalfSpaceSystem::new(MaterialModel::Vacuum, MaterialModel::Vacuum, 10.0).unwrap()
}

fn lorentz() -> impl Strategy<Value = Lorentz> {
    (1.0..6.0f64, 0.01..10.0f64, 0.1..3.0f64, 1e-4..0.5f64)
        .prop_map(|(eta, d, wt, g)| Lorentz::new(eta, eta + d, wt, g).unwrap())
}

fn geometry() -> impl Strategy<Value = AtomPositions> {
    (
        prop::array::uniform4(-0.05..0.05f64),
        1e-3..0.05f64,
        -0.05..-1e-3f64,
    )
        .prop_map(|(xy, za, zb)| {
            AtomPositions::new([xy[0], xy[1], za], [xy[2], xy[3], zb]).unwrap()
        })
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

proptest! {
    #[test]
    fn lorentz_absorbs_on_the_real_axis(l in lorentz(), omega in 1e-3..10.0f64) {
        let eps = eval_eps(&MaterialModel::Lorentz(l), Complex64::new(omega, 0.0)).unwrap();
        prop_assert!(eps.im > 0.0);
    }

    #[test]
    fn imaginary_axis_permittivity_falls_from_static_to_optical(
        l in lorentz(),
        xi in 0.0..50.0f64,
        step in 1e-3..5.0f64,
    ) {
        let m = MaterialModel::Lorentz(l);
        let at = |x: f64| eval_eps(&m, Complex64::new(0.0, x)).unwrap();
        let (lo, hi) = (at(xi), at(xi + step));
        prop_assert_eq!(lo.im, 0.0);
        prop_assert!(hi.re < lo.re);
        prop_assert!(lo.re <= l.eps0 && hi.re > l.eta);
    }

    #[test]
    fn mode_frequency_ordering_and_ratio(l in lorentz()) {
        let m = MaterialModel::Lorentz(l);
        let ws = surface_mode_freq(&m).unwrap();
        let wc = cavity_mode_freq(&m).unwrap();
        prop_assert!(l.omega_t < ws && l.omega_t < wc);
        let expect = ((2.0 * l.eps0 + 1.0) * (l.eta + 1.0) / ((2.0 * l.eta + 1.0) * (l.eps0 + 1.0))).sqrt();
        prop_assert!(rel(wc / ws, expect) < 1e-14);
    }

    #[test]
    fn closed_form_scales_as_inverse_cube(
        pos in geometry(),
        lambda in 0.01..100.0f64,
        omega in 0.1..2.0f64,
    ) {
        let sys = sapphire();
        let w = Complex64::new(omega, 0.0);
        let g = nonretarded_green(&sys, w, &pos).unwrap();
        let g_scaled = nonretarded_green(&sys, w, &pos.scaled(lambda).unwrap()).unwrap();
        let diff = (g_scaled - g.scaled(Complex64::new(lambda.powi(-3), 0.0))).max_abs();
        prop_assert!(diff <= 1e-12 * g_scaled.max_abs());
    }

    #[test]
    fn london_limit_in_vacuum(
        wa in 0.1..3.0f64,
        wb in 0.1..3.0f64,
        aa in 0.1..5.0f64,
        ab in 0.1..5.0f64,
        r in 1e-3..0.1f64,
    ) {
        let a = AtomParams::new(wa, 0.0, aa).unwrap();
        let b = AtomParams::new(wb, 0.0, ab).unwrap();
        let got = offresonant_potential(&vacuum(), &a, &b, r, &QuadratureSpec::with_rel_tol(1e-10)).unwrap();
        let london = -(3.0 / PI) * aa * ab * (PI / 2.0) * wa * wb / (wa + wb);
        prop_assert!(rel(got.value, london / (2.0 * ab)) < 1e-6);
    }

    #[test]
    fn resonant_potential_depends_only_on_distance(
        pos in geometry(),
        theta in 0.0..(2.0 * PI),
        omega in 0.5..1.5f64,
    ) {
        // rotating both atoms about the surface normal keeps R
        let (c, s) = (theta.cos(), theta.sin());
        let rot = |v: [f64; 3]| [c * v[0] - s * v[1], s * v[0] + c * v[1], v[2]];
        let turned = AtomPositions::new(rot(pos.r_a()), rot(pos.r_b())).unwrap();
        let a = AtomParams::new(omega, 0.0, 1.0).unwrap();
        let b = AtomParams::new(0.9, 1e-3, 1.0).unwrap();
        let sys = sapphire();
        let (fa, _) = force(&sys, &a, &b, &pos).unwrap();
        let (fb, _) = force(&sys, &a, &b, &turned).unwrap();
        let norm = |f: [f64; 3]| f.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assert!(rel(norm(fb), norm(fa)) < 1e-10);
        let u1 = resonant_potential(&sys, &a, &b, pos.distance()).unwrap().u_resonant;
        let u2 = resonant_potential(&sys, &a, &b, turned.distance()).unwrap().u_resonant;
        prop_assert_eq!(u1, u2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn resonant_inverse_average_matches_direct(omega in 0.0..3.0f64) {
        let m = sapphire_model();
        let w = Complex64::new(omega, 0.0);
        let product = inv_avg_eps_resonant(&m, omega).unwrap() * avg_eps(&sapphire(), w).unwrap();
        prop_assert!((product - 1.0).norm() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn inverse_distance_quadrature(rho in 0.0..2.0f64, dz in 0.05..2.0f64) {
        let quad = QuadratureSpec::with_rel_tol(1e-8);
        let got = inverse_distance_integral(rho, dz, &quad).unwrap();
        let exact = 1.0 / (rho * rho + dz * dz).sqrt();
        prop_assert!((got.value[0] - exact).norm() <= 1e-8 * exact);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn force_is_minus_potential_gradient(pos in geometry(), omega in 0.6..1.4f64) {
        let a = AtomParams::new(omega, 0.0, 1.0).unwrap();
        let b = AtomParams::new(0.9, 1e-3, 1.0).unwrap();
        let sys = sapphire();
        let u = |r: f64| resonant_potential(&sys, &a, &b, r).unwrap().u_resonant * reference_potential(&a, &b, r);
        let r = pos.distance();
        let h = 1e-4 * r;
        let du = (u(r + h) - u(r - h)) / (2.0 * h);
        let (fa, _) = force(&sys, &a, &b, &pos).unwrap();
        let sep = pos.separation();
        let radial: f64 = (0..3).map(|i| fa[i] * sep[i] / r).sum();
        prop_assert!(rel(radial, -du) < 1e-6);
    }

    #[test]
    fn offresonant_tolerance_halving_stays_within_error(omega in 0.5..1.5f64, tol in 1e-9..1e-6f64) {
        let a = AtomParams::new(omega, 0.0, 1.0).unwrap();
        let b = AtomParams::new(0.9, 1e-3, 1.0).unwrap();
        let sys = sapphire();
        let coarse = offresonant_potential(&sys, &a, &b, 1e-3, &QuadratureSpec::with_rel_tol(tol)).unwrap();
        let fine = offresonant_potential(&sys, &a, &b, 1e-3, &QuadratureSpec::with_rel_tol(tol / 2.0)).unwrap();
        prop_assert!((coarse.value - fine.value).abs() <= coarse.error.max(f64::EPSILON * coarse.value.abs()));
    }
}

#[test]
fn local_field_factor_fixed_point() {
    assert_eq!(
        local_field_factor(Complex64::new(1.0, 0.0)).unwrap(),
        Complex64::new(1.0, 0.0)
    );
    assert!(local_field_factor(Complex64::new(-0.5, 0.0)).is_err());
}

#[test]
fn vacuum_enhancement_is_one_everywhere() {
    let grid = ScanSpec::new(1e-3, 3.0, 1000).unwrap().grid();
    for w in grid {
        let e = enhancement_factor(&vacuum(), w).unwrap();
        assert_eq!(e.g, 1.0, "g at {w}");
        assert_eq!(e.g_no_lf, 1.0);
    }
}

fn pair_model() -> SpectrumModel {
    SpectrumModel::new(
        sapphire(),
        AtomParams::new(1.0, 0.0, 1.0).unwrap(),
        AtomParams::new(0.9, 1e-3, 1.0).unwrap(),
    )
}

#[test]
fn curve_ratio_is_local_field_gain() {
    let model = pair_model();
    let rows = model.scan(&ScanSpec::around_surface_mode(1.0)).unwrap();
    for r in rows.iter().filter(|r| !r.singular) {
        let ratio = r.u_resonant / r.u_resonant_no_lf.unwrap();
        let lf = local_field_ratio(&model.system, r.omega_a).unwrap();
        assert!(
            rel(ratio, lf) < 1e-10,
            "omega {}: {ratio} vs {lf}",
            r.omega_a
        );
    }
}

#[test]
fn refined_peaks_survive_grid_doubling() {
    let model = pair_model();
    let tol = 1e-10;
    let peaks = |n| {
        let rows = model.scan(&ScanSpec::new(0.7, 1.3, n).unwrap()).unwrap();
        (model.find_peaks(&rows, tol), rows)
    };
    let (coarse, rows) = peaks(2000);
    let (fine, _) = peaks(4000);
    assert_eq!(coarse.len(), fine.len());
    for (c, f) in coarse.iter().zip(&fine) {
        assert_eq!(c.kind, f.kind);
        assert!(
            rel(f.location, c.location) < tol,
            "{} vs {}",
            c.location,
            f.location
        );
    }
    for p in &coarse {
        let i = rows.partition_point(|r| r.omega_a < p.location);
        for r in &rows[i.saturating_sub(1)..(i + 1).min(rows.len())] {
            assert!(p.height >= r.u_resonant.abs());
        }
    }
}

#[test]
fn offresonant_part_is_small_near_the_surface_mode() {
    let sys = sapphire();
    let ws = surface_mode_freq(&sapphire_model()).unwrap();
    let a = AtomParams::new(ws, 0.0, 1.0).unwrap();
    let b = AtomParams::new(0.9, 1e-3, 1.0).unwrap();
    let resonant = resonant_potential(&sys, &a, &b, 1e-3).unwrap().u_resonant;
    let off = offresonant_potential(&sys, &a, &b, 1e-3, &QuadratureSpec::default())
        .unwrap()
        .value;
    assert!(off.abs() < 1e-2 * resonant.abs(), "{off} vs {resonant}");
}
