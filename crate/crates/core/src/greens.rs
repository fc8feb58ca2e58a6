//! Two-point dyadic Green function for atoms on opposite sides of a planar
//! interface.
//!
//! Lengths are in units of `c/ω_ref` and frequencies in units of `ω_ref`, so
//! the speed of light is 1 throughout. The Green function is normalised by
//! `[∇×μ⁻¹∇× − εω²]G = 4π δ I`.
//!
//! Three routes are provided:
//! - [`kspace_green`]: the plane-wave transmission kernel at fixed in-plane
//!   wavenumber `k`,
//! - [`sommerfeld_green`]: its real-space transform, reduced to radial
//!   Bessel-kernel integrals and evaluated by adaptive quadrature,
//! - [`nonretarded_green`]: the closed form of the `c → ∞` limit, which only
//!   involves the average permittivity `ε̄ = (ε + ε_m)/2`.

use std::f64::consts::PI;

use num_complex::Complex64;
use puruspe::Jn;

use crate::error::{Error, Result};
use crate::materials::{
    eval_eps, eval_mu, is_pole, local_field_factor, refractive_index, upper_branch_sqrt,
    HalfSpaceSystem,
};
use crate::quadrature::{integrate, Integral, QuadratureSpec};
use crate::tensor::{self, ComplexTensor3, Vec3};

/// Bound on the neglected evanescent tail, relative to the leading near-field scale.
pub const TAIL_BOUND: f64 = 1e-14;

/// Positions of the excited atom A (`z > 0`) and the ground-state atom B (`z < 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomPositions {
    r_a: Vec3,
    r_b: Vec3,
}

impl AtomPositions {
    pub fn new(r_a: Vec3, r_b: Vec3) -> Result<Self> {
        if !r_a.iter().chain(r_b.iter()).all(|x| x.is_finite()) {
            return Err(Error::invalid("positions", "coordinates must be finite"));
        }
        if !(r_a[2] > 0.0) {
            return Err(Error::invalid(
                "r_a",
                "atom A must sit above the interface (z > 0)",
            ));
        }
        if !(r_b[2] < 0.0) {
            return Err(Error::invalid(
                "r_b",
                "atom B must sit below the interface (z < 0)",
            ));
        }
        Ok(Self { r_a, r_b })
    }

    /// Both atoms on the interface normal through the origin.
    pub fn on_axis(z_a: f64, z_b: f64) -> Result<Self> {
        Self::new([0.0, 0.0, z_a], [0.0, 0.0, z_b])
    }

    pub fn r_a(&self) -> Vec3 {
        self.r_a
    }

    pub fn r_b(&self) -> Vec3 {
        self.r_b
    }

    /// `R = r_A − r_B`.
    pub fn separation(&self) -> Vec3 {
        tensor::sub(&self.r_a, &self.r_b)
    }

    pub fn distance(&self) -> f64 {
        tensor::norm(&self.separation())
    }

    /// In-plane separation as `(ρ, φ)`.
    pub fn in_plane(&self) -> (f64, f64) {
        let r = self.separation();
        (r[0].hypot(r[1]), r[1].atan2(r[0]))
    }

    /// Both positions scaled about the origin.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        Self::new(tensor::scale(&self.r_a, s), tensor::scale(&self.r_b, s))
    }
}

/// Fresnel transmission coefficients from the lower into the upper medium.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FresnelT {
    pub tp: Complex64,
    pub ts: Complex64,
}

/// Everything the transmission kernel needs at one `(ω, k)`.
#[derive(Debug, Clone, Copy)]
struct Transmission {
    n: Complex64,
    n_m: Complex64,
    mu: Complex64,
    beta: Complex64,
    beta_m: Complex64,
    t: FresnelT,
}

/// Normal wavenumber `√((nω)² − k²)` on the decaying branch.
fn normal_wavenumber(n: Complex64, omega: f64, k: f64) -> Complex64 {
    let nw = n * omega;
    upper_branch_sqrt(nw * nw - k * k)
}

/// Per-frequency material data, evaluated once and reused for every `k`.
#[derive(Debug, Clone, Copy)]
struct Media {
    eps: Complex64,
    eps_m: Complex64,
    mu: Complex64,
    mu_m: Complex64,
    n: Complex64,
    n_m: Complex64,
}

impl Media {
    fn at(sys: &HalfSpaceSystem, omega: f64) -> Result<Self> {
        let w = Complex64::new(omega, 0.0);
        let (eps, eps_m) = sys.eps_pair(w)?;
        let mu = eval_mu(&sys.upper, w);
        let mu_m = eval_mu(&sys.lower, w);
        Ok(Self {
            eps,
            eps_m,
            mu,
            mu_m,
            n: refractive_index(eps, mu),
            n_m: refractive_index(eps_m, mu_m),
        })
    }

    fn matched(&self) -> bool {
        self.eps == self.eps_m && self.mu == self.mu_m
    }

    fn transmission(&self, omega: f64, k: f64) -> Result<Transmission> {
        let beta = normal_wavenumber(self.n, omega, k);
        let beta_m = normal_wavenumber(self.n_m, omega, k);
        let one = Complex64::new(1.0, 0.0);
        let t = if self.matched() {
            FresnelT { tp: one, ts: one }
        } else {
            let (a, b) = (self.eps_m * beta, self.eps * beta_m);
            if is_pole(a + b, a.norm() + b.norm()) {
                return Err(Error::singular(format!("p-polarised pole at k = {k:e}")));
            }
            let (c, d) = (self.mu_m * beta, self.mu * beta_m);
            if is_pole(c + d, c.norm() + d.norm()) {
                return Err(Error::singular(format!("s-polarised pole at k = {k:e}")));
            }
            // √(εμ_m/(ε_mμ)) written as n μ_m/(n_m μ) so its branch follows the
            // refractive indices instead of the principal root of the ratio.
            let ratio = self.n * self.mu_m / (self.n_m * self.mu);
            FresnelT {
                tp: ratio * 2.0 * a / (a + b),
                ts: 2.0 * c / (c + d),
            }
        };
        Ok(Transmission {
            n: self.n,
            n_m: self.n_m,
            mu: self.mu,
            beta,
            beta_m,
            t,
        })
    }

    /// Lossless media can carry a bound interface mode with a pole on the
    /// real `k` axis, which the straight integration path cannot pass.
    fn check_real_axis_path(&self, sys: &HalfSpaceSystem) -> Result<()> {
        let lossless = sys.upper.is_lossless() && sys.lower.is_lossless();
        if lossless && (self.eps.re * self.eps_m.re < 0.0 || self.mu.re * self.mu_m.re < 0.0) {
            return Err(Error::singular(
                "lossless interface supports a guided mode on the integration path",
            ));
        }
        Ok(())
    }
}

fn check_frequency(omega: f64) -> Result<()> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::invalid("omega", "must be positive and finite"));
    }
    Ok(())
}

fn check_wavenumber(k: f64) -> Result<()> {
    if !(k >= 0.0 && k.is_finite()) {
        return Err(Error::invalid("k", "must be non-negative and finite"));
    }
    Ok(())
}

/// Fresnel `t^p`, `t^s` at real frequency `omega` and in-plane wavenumber `k`.
pub fn fresnel_t(sys: &HalfSpaceSystem, omega: f64, k: f64) -> Result<FresnelT> {
    check_frequency(omega)?;
    check_wavenumber(k)?;
    Ok(Media::at(sys, omega)?.transmission(omega, k)?.t)
}

/// Plane-wave transmission kernel `G̃(z_A, z_B; ω, k)` in the `(k̂, k̂×ẑ, ẑ)` frame.
pub fn kspace_green(
    sys: &HalfSpaceSystem,
    omega: f64,
    k: f64,
    z_a: f64,
    z_b: f64,
) -> Result<ComplexTensor3> {
    check_frequency(omega)?;
    check_wavenumber(k)?;
    if !(z_a > 0.0 && z_b < 0.0) {
        return Err(Error::invalid("z", "need z_A > 0 > z_B"));
    }
    let tr = Media::at(sys, omega)?.transmission(omega, k)?;
    if tr.beta.norm() == 0.0 {
        return Err(Error::singular(
            "beta = 0 at the light line of the upper medium",
        ));
    }
    let i = Complex64::i();
    let zero = Complex64::new(0.0, 0.0);
    let kc = Complex64::new(k, 0.0);
    let a = [tr.beta, zero, -kc].map(|x| x / (tr.n * omega));
    let b = [tr.beta_m, zero, -kc].map(|x| x / (tr.n_m * omega));
    let s = [zero, Complex64::new(1.0, 0.0), zero];
    let dyad = ComplexTensor3::outer(&a, &b).scaled(tr.t.tp)
        + ComplexTensor3::outer(&s, &s).scaled(tr.t.ts);
    let phase = (i * tr.beta * z_a - i * tr.beta_m * z_b).exp();
    Ok(dyad.scaled(2.0 * PI * i * tr.mu / tr.beta * phase))
}

/// Whether the Onsager cavity factors `D`, `D_m` multiply the Green function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalField {
    Included,
    Excluded,
}

/// `D(ω)·D_m(ω)` at complex frequency.
pub fn local_field_product(sys: &HalfSpaceSystem, omega: Complex64) -> Result<Complex64> {
    let (eps, eps_m) = sys.eps_pair(omega)?;
    Ok(local_field_factor(eps)? * local_field_factor(eps_m)?)
}

/// Closed-form nonretarded Green function
/// `G_nr = D D_m (c/ω)² (3R̂R̂ − I) / (ε̄ R³)`.
///
/// `omega` may be real or on the positive imaginary axis.
pub fn nonretarded_green(
    sys: &HalfSpaceSystem,
    omega: Complex64,
    pos: &AtomPositions,
) -> Result<ComplexTensor3> {
    Ok(ComplexTensor3::near_field_dipole(&pos.separation())
        .scaled(nonretarded_prefactor(sys, omega)? / pos.distance().powi(3)))
}

/// Scalar `D D_m/(ω² ε̄)` multiplying `(3R̂R̂ − I)/R³`.
pub(crate) fn nonretarded_prefactor(sys: &HalfSpaceSystem, omega: Complex64) -> Result<Complex64> {
    if omega.norm() == 0.0 {
        return Err(Error::invalid("omega", "must be nonzero"));
    }
    let (eps, eps_m) = sys.eps_pair(omega)?;
    let avg = 0.5 * (eps + eps_m);
    if is_pole(avg, eps.norm().max(eps_m.norm())) {
        return Err(Error::singular(format!(
            "average permittivity vanishes at omega = {omega}"
        )));
    }
    let lf = local_field_factor(eps)? * local_field_factor(eps_m)?;
    Ok(lf / (omega * omega * avg))
}

/// Smooth map of `s ∈ [0,1]` onto `[a,b]` with vanishing derivative at both
/// ends; removes inverse-square-root branch-point singularities.
fn smoothstep(a: f64, b: f64, s: f64) -> (f64, f64) {
    let w = b - a;
    (a + w * s * s * (3.0 - 2.0 * s), 6.0 * w * s * (1.0 - s))
}

/// `L` with `e^{−L}(1 + L)³ = TAIL_BOUND`; bounds the `k²e^{−kd}` tail.
fn tail_length() -> f64 {
    let mut l = -TAIL_BOUND.ln();
    for _ in 0..50 {
        l = -TAIL_BOUND.ln() + 3.0 * (1.0 + l).ln();
    }
    l
}

/// Radial integration layout: light-line breakpoints and the truncated tail.
fn radial_segments(media: &Media, omega: f64, depth: f64) -> Vec<f64> {
    let mut knots = vec![0.0];
    let mut lines: Vec<f64> = [media.n, media.n_m]
        .iter()
        .map(|n| n.re * omega)
        .filter(|&k| k > 0.0)
        .collect();
    lines.sort_by(f64::total_cmp);
    for k in lines {
        if k > knots.last().unwrap() * (1.0 + 1e-12) {
            knots.push(k);
        }
    }
    let split = *knots.last().unwrap();
    knots.push(split + tail_length() / depth);
    knots
}

/// Number of initial panels for a segment spanning `width` of `k` with Bessel argument `k ρ`.
fn seed_panels(width: f64, rho: f64) -> usize {
    ((width * rho / (2.0 * PI)).ceil() as usize).clamp(1, 256)
}

/// Real-space transmission Green function from the plane-wave superposition
/// `∫ d²k/(2π)² e^{ik·R_∥} G̃(z_A, z_B; ω, k)`.
///
/// The angular integral is done analytically, leaving five radial integrals
/// with `J₀`, `J₁`, `J₂` kernels; these are integrated along the real `k`
/// axis between the light lines of the two media and over an evanescent tail
/// truncated where `e^{−k(z_A − z_B)}` has dropped below [`TAIL_BOUND`].
pub fn sommerfeld_green(
    sys: &HalfSpaceSystem,
    omega: f64,
    pos: &AtomPositions,
    quad: &QuadratureSpec,
    local_field: LocalField,
) -> Result<ComplexTensor3> {
    check_frequency(omega)?;
    quad.validate()?;
    let media = Media::at(sys, omega)?;
    media.check_real_axis_path(sys)?;

    let [x_a, y_a, z_a] = pos.r_a();
    let [x_b, y_b, z_b] = pos.r_b();
    let rho = (x_a - x_b).hypot(y_a - y_b);
    let phi = (y_a - y_b).atan2(x_a - x_b);
    let depth = z_a - z_b;

    let knots = radial_segments(&media, omega, depth);
    let mut breaks = vec![0.0];
    let mut owner = Vec::new();
    for (seg, w) in knots.windows(2).enumerate() {
        let n = seed_panels(w[1] - w[0], rho);
        for j in 1..=n {
            breaks.push(seg as f64 + j as f64 / n as f64);
        }
        owner.push((w[0], w[1]));
    }

    let i = Complex64::i();
    let radial = |u: f64| -> Result<[Complex64; 5]> {
        let seg = (u.floor() as usize).min(owner.len() - 1);
        let (a, b) = owner[seg];
        let (k, dk) = smoothstep(a, b, u - seg as f64);
        let tr = media.transmission(omega, k)?;
        let phase = (i * tr.beta * z_a - i * tr.beta_m * z_b).exp();
        let pref = i * k / (2.0 * PI) * tr.mu / tr.beta * phase * dk;
        let cp = tr.t.tp / (tr.n * tr.n_m * omega * omega);
        let cs = tr.t.ts;
        let bb = tr.beta * tr.beta_m;
        let x = k * rho;
        let (j0, j1, j2) = (Jn(0, x), Jn(1, x), Jn(2, x));
        Ok([
            pref * (cp * bb + cs) * PI * j0,
            pref * (cs - cp * bb) * PI * j2,
            pref * cp * (-tr.beta * k) * 2.0 * PI * i * j1,
            pref * cp * (-tr.beta_m * k) * 2.0 * PI * i * j1,
            pref * cp * (k * k) * 2.0 * PI * j0,
        ])
    };
    let Integral { value, .. } = integrate(radial, &breaks, quad)?;
    let [ia, ib, ixz, izx, izz] = value;

    let (c1, s1) = (phi.cos(), phi.sin());
    let (c2, s2) = ((2.0 * phi).cos(), (2.0 * phi).sin());
    let mut g = ComplexTensor3::zeros();
    g[(0, 0)] = ia + ib * c2;
    g[(1, 1)] = ia - ib * c2;
    g[(0, 1)] = ib * s2;
    g[(1, 0)] = ib * s2;
    g[(0, 2)] = ixz * c1;
    g[(1, 2)] = ixz * s1;
    g[(2, 0)] = izx * c1;
    g[(2, 1)] = izx * s1;
    g[(2, 2)] = izz;

    if !g.is_finite() {
        return Err(Error::singular("non-finite Sommerfeld integral"));
    }
    Ok(match local_field {
        LocalField::Excluded => g,
        LocalField::Included => g.scaled(local_field_product(sys, Complex64::new(omega, 0.0))?),
    })
}

/// `∫₀^∞ J₀(kρ) e^{−k|Δz|} dk`, the plane-wave form of `1/√(ρ² + Δz²)`.
pub fn inverse_distance_integral(rho: f64, dz: f64, quad: &QuadratureSpec) -> Result<Integral<1>> {
    if !(rho >= 0.0 && dz != 0.0 && dz.is_finite()) {
        return Err(Error::invalid(
            "geometry",
            "need rho >= 0 and finite nonzero dz",
        ));
    }
    let depth = dz.abs();
    let k_max = tail_length() / depth;
    let n = seed_panels(k_max, rho);
    let breaks: Vec<f64> = (0..=n).map(|j| k_max * j as f64 / n as f64).collect();
    integrate(
        |k| Ok([Complex64::new(Jn(0, k * rho) * (-k * depth).exp(), 0.0)]),
        &breaks,
        quad,
    )
}

pub const COMPONENT_LABELS: [[&str; 3]; 3] =
    [["xx", "xy", "xz"], ["yx", "yy", "yz"], ["zx", "zy", "zz"]];

/// One tensor component's ratio `sommerfeld / closed form` at one scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitRatio {
    pub scale: f64,
    pub component: (usize, usize),
    pub ratio: Complex64,
}

impl LimitRatio {
    pub fn label(&self) -> &'static str {
        COMPONENT_LABELS[self.component.0][self.component.1]
    }

    pub fn deviation(&self) -> f64 {
        (self.ratio - 1.0).norm()
    }
}

/// Observed convergence order of `|ratio − 1|` between the two smallest scales.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceOrder {
    pub component: (usize, usize),
    pub order: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct LimitCheckReport {
    pub ratios: Vec<LimitRatio>,
    pub orders: Vec<ConvergenceOrder>,
}

impl LimitCheckReport {
    /// Largest `|ratio − 1|` at the smallest scale, if any scale was run.
    pub fn final_max_deviation(&self) -> Option<f64> {
        let last = self.ratios.last()?.scale;
        self.ratios
            .iter()
            .filter(|r| r.scale == last)
            .map(LimitRatio::deviation)
            .reduce(f64::max)
    }

    pub fn passes(&self, tolerance: f64) -> bool {
        self.final_max_deviation().is_some_and(|d| d <= tolerance)
    }

    /// Whether `|ratio − 1|` shrinks from each scale to the next for every component.
    pub fn is_monotone(&self) -> bool {
        let mut by_component: Vec<((usize, usize), Vec<f64>)> = Vec::new();
        for r in &self.ratios {
            match by_component.iter_mut().find(|(c, _)| *c == r.component) {
                Some((_, devs)) => devs.push(r.deviation()),
                None => by_component.push((r.component, vec![r.deviation()])),
            }
        }
        by_component
            .iter()
            .all(|(_, devs)| devs.windows(2).all(|w| w[1] <= w[0]))
    }
}

/// Shrinks the geometry by each factor in `scales` and compares the
/// Sommerfeld integral (local field included) with the closed nonretarded
/// form, component by component. Components that vanish in the closed form
/// are skipped.
pub fn nonretarded_limit_check(
    sys: &HalfSpaceSystem,
    omega: f64,
    pos: &AtomPositions,
    scales: &[f64],
    quad: &QuadratureSpec,
) -> Result<LimitCheckReport> {
    if scales.iter().any(|&s| !(s > 0.0 && s.is_finite())) {
        return Err(Error::invalid("scales", "must be positive and finite"));
    }
    if scales.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::invalid("scales", "must be strictly decreasing"));
    }
    let mut report = LimitCheckReport::default();
    for &scale in scales {
        let p = pos.scaled(scale)?;
        let exact = nonretarded_green(sys, Complex64::new(omega, 0.0), &p)?;
        let integral = sommerfeld_green(sys, omega, &p, quad, LocalField::Included)?;
        let floor = 1e-9 * exact.max_abs();
        for i in 0..3 {
            for j in 0..3 {
                if exact[(i, j)].norm() > floor {
                    report.ratios.push(LimitRatio {
                        scale,
                        component: (i, j),
                        ratio: integral[(i, j)] / exact[(i, j)],
                    });
                }
            }
        }
    }
    if scales.len() >= 2 {
        let (s1, s2) = (scales[scales.len() - 2], scales[scales.len() - 1]);
        let at = |s: f64, c: (usize, usize)| {
            report
                .ratios
                .iter()
                .find(|r| r.scale == s && r.component == c)
                .map(LimitRatio::deviation)
        };
        for r in report.ratios.iter().filter(|r| r.scale == s2) {
            if let (Some(d1), Some(d2)) = (at(s1, r.component), at(s2, r.component)) {
                report.orders.push(ConvergenceOrder {
                    component: r.component,
                    order: (d2 / d1).ln() / (s2 / s1).ln(),
                });
            }
        }
    }
    Ok(report)
}

/// Largest refractive-index modulus of the two media at `omega`.
pub fn max_index(sys: &HalfSpaceSystem, omega: f64) -> Result<f64> {
    let w = Complex64::new(omega, 0.0);
    let n = refractive_index(eval_eps(&sys.upper, w)?, eval_mu(&sys.upper, w));
    let n_m = refractive_index(eval_eps(&sys.lower, w)?, eval_mu(&sys.lower, w));
    Ok(n.norm().max(n_m.norm()))
}
