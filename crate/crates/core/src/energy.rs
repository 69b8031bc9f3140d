//! Energy-density spectra in the gap.
//!
//! `u(Ω; z)` is the spectral density at a single point `Ω = (ω, q)` of
//! the full frequency axis; the physical spectrum over `ω > 0` is
//! `u(Ω) + u(−Ω) = 2u(Ω)`. `U(ω, q)` is its integral across the gap.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::greens::{normal_components, CavityConfig, InterfaceSpec, Side};
use crate::keldysh::{free_kg_amplitudes, kg_amplitudes, KGAmplitudes};
use crate::materials::{lorentz_spectral, medium_wave_number, Material};
use crate::quadrature::{integrate_propagating, QSettings};
use crate::spectral::{wave_numbers, Sector, SpectralPoint};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    S,
    P,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::S, Polarization::P];

    pub fn index(self) -> usize {
        match self {
            Polarization::S => 0,
            Polarization::P => 1,
        }
    }
}

/// Weights multiplying `D^{νν'}_{σσ} e^{i(ν qz − ν' qz*) z}` in the energy
/// density, before the overall factor `i/16π`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightTable {
    pub sector: Sector,
    w: [[[f64; 2]; 2]; 2],
}

impl WeightTable {
    pub fn new(pt: SpectralPoint) -> Result<Self> {
        let wn = wave_numbers(pt)?;
        let w2 = pt.omega * pt.omega;
        let q2 = pt.q_sqr();
        let qz = wn.qz;
        let abs2 = qz.norm_sqr();
        // qz⁴ is real on both branches
        let qz4 = (qz * qz * qz * qz).re;
        let mut w = [[[0.0; 2]; 2]; 2];
        for nu in Side::BOTH {
            for nup in Side::BOTH {
                let s = nu.sign() * nup.sign();
                w[nu.index()][nup.index()] = [w2 + q2 + s * abs2, w2 * (1.0 + s * (w2 + q2) * abs2 / qz4)];
            }
        }
        Ok(WeightTable { sector: wn.sector, w })
    }

    pub fn weight(&self, nu: Side, nu_prime: Side, pol: Polarization) -> f64 {
        self.w[nu.index()][nu_prime.index()][pol.index()]
    }
}

/// Flags attached to a spectrum value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SpectrumFlags {
    pub resonance_skipped: bool,
    pub vacuum_subtracted: bool,
}

/// Gap-integrated energy spectrum at one spectral point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergySpectrumPoint {
    pub pt: SpectralPoint,
    pub value: f64,
    pub flags: SpectrumFlags,
}

/// Complex energy density from KG amplitudes; the imaginary part is
/// round-off.
pub fn energy_density_complex(amps: &KGAmplitudes, z: f64) -> Result<C64> {
    let table = WeightTable::new(amps.pt)?;
    let qz = amps.qz;
    let mut acc = C64::new(0.0, 0.0);
    for nu in Side::BOTH {
        for nup in Side::BOTH {
            let d = amps.get(nu, nup);
            let phase = (C64::i() * (qz * nu.sign() - qz.conj() * nup.sign()) * z).exp();
            let term =
                d.ss() * table.weight(nu, nup, Polarization::S) + d.pp() * table.weight(nu, nup, Polarization::P);
            acc += term * phase;
        }
    }
    Ok(acc * C64::new(0.0, 1.0 / (16.0 * PI)))
}

/// `u(Ω; z)` in the gap.
pub fn energy_density(cfg: &CavityConfig, pt: SpectralPoint, z: f64) -> Result<f64> {
    cfg.check_in_gap(z)?;
    Ok(energy_density_complex(&kg_amplitudes(cfg, pt)?, z)?.re)
}

/// `u(Ω; z)` assembled from the electric and magnetic field correlations,
/// with the normal electric component taken from the `zz` tensor element.
pub fn energy_density_from_fields(cfg: &CavityConfig, pt: SpectralPoint, z: f64) -> Result<C64> {
    cfg.check_in_gap(z)?;
    let amps = kg_amplitudes(cfg, pt)?;
    let field = amps.expansion();
    let nc = normal_components(&field, pt, z, z)?;
    let d = field.eval(z, z);
    let dd = field.d2_dz_dz_prime(z, z);
    let wn = wave_numbers(pt)?;
    let w2 = pt.omega * pt.omega;
    let qz2 = wn.qz * wn.qz;
    let electric = (d.ss() + d.pp() + nc.zz) * w2;
    let magnetic = dd.ss() + dd.pp() * (w2 * w2) / (qz2 * qz2) + d.ss() * pt.q_sqr();
    Ok((electric + magnetic) * C64::new(0.0, 1.0 / (16.0 * PI)))
}

/// Renormalized density `u − u₀(T_env)` in the gap.
pub fn energy_density_renormalized(cfg: &CavityConfig, pt: SpectralPoint, z: f64, t_env: f64) -> Result<f64> {
    cfg.check_in_gap(z)?;
    let amps = kg_amplitudes(cfg, pt)?.sub(&free_kg_amplitudes(pt, t_env)?);
    Ok(energy_density_complex(&amps, z)?.re)
}

/// `∫_{−a/2}^{a/2} e^{εz} dz`, with the limit `a` below the floor.
pub fn gap_integral(eps: C64, a: f64, floor: f64) -> C64 {
    if (eps * a).norm() < floor {
        return C64::new(a, 0.0);
    }
    ((eps * (0.5 * a)).exp() - (eps * (-0.5 * a)).exp()) / eps
}

/// Complex `∫ u dz` from amplitudes.
pub fn energy_per_area_complex(amps: &KGAmplitudes, a: f64, floor: f64) -> Result<C64> {
    let table = WeightTable::new(amps.pt)?;
    let qz = amps.qz;
    let mut acc = C64::new(0.0, 0.0);
    for nu in Side::BOTH {
        for nup in Side::BOTH {
            let d = amps.get(nu, nup);
            let eps = C64::i() * (qz * nu.sign() - qz.conj() * nup.sign());
            let term =
                d.ss() * table.weight(nu, nup, Polarization::S) + d.pp() * table.weight(nu, nup, Polarization::P);
            acc += term * gap_integral(eps, a, floor);
        }
    }
    Ok(acc * C64::new(0.0, 1.0 / (16.0 * PI)))
}

/// `U(ω, q)`, the energy density integrated across the gap.
pub fn energy_per_area(cfg: &CavityConfig, pt: SpectralPoint) -> Result<EnergySpectrumPoint> {
    let amps = kg_amplitudes(cfg, pt)?;
    Ok(EnergySpectrumPoint {
        pt,
        value: energy_per_area_complex(&amps, cfg.a, cfg.floors.z_integral)?.re,
        flags: SpectrumFlags::default(),
    })
}

/// `U − U₀(T_env)`.
pub fn energy_per_area_renormalized(cfg: &CavityConfig, pt: SpectralPoint, t_env: f64) -> Result<EnergySpectrumPoint> {
    let amps = kg_amplitudes(cfg, pt)?.sub(&free_kg_amplitudes(pt, t_env)?);
    Ok(EnergySpectrumPoint {
        pt,
        value: energy_per_area_complex(&amps, cfg.a, cfg.floors.z_integral)?.re,
        flags: SpectrumFlags {
            vacuum_subtracted: true,
            ..SpectrumFlags::default()
        },
    })
}

/// Grid-friendly evaluation: a cavity resonance yields a flagged zero
/// instead of an error.
pub fn evaluate_spectrum(
    cfg: &CavityConfig,
    pt: SpectralPoint,
    subtract_vacuum: Option<f64>,
) -> Result<EnergySpectrumPoint> {
    let res = match subtract_vacuum {
        Some(t_env) => energy_per_area_renormalized(cfg, pt, t_env),
        None => energy_per_area(cfg, pt),
    };
    match res {
        Err(Error::CavityResonance { .. }) => Ok(EnergySpectrumPoint {
            pt,
            value: 0.0,
            flags: SpectrumFlags {
                resonance_skipped: true,
                vacuum_subtracted: subtract_vacuum.is_some(),
            },
        }),
        other => other,
    }
}

/// Free-space density `u₀ = (ω²/qz) coth(ω/2T) Θ(ω² − q²)`.
pub fn free_energy_density(pt: SpectralPoint, temperature: f64) -> Result<f64> {
    let wn = wave_numbers(pt)?;
    if !wn.is_propagating() {
        return Ok(0.0);
    }
    let eta = crate::sources::ThermalFactor::new(pt.omega, temperature).eta;
    Ok(pt.omega * pt.omega / wn.qz.re * eta)
}

/// q-integrated free-space spectrum, `∫ d²q/(2π)³ u₀`, evaluated through
/// the cavity machinery with transparent walls. Equals
/// `ω³/(2π²)(N(ω) + ½)`.
pub fn planck_spectrum(temperature: f64, omega: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::invalid("omega", "must be positive"));
    }
    let a = 1.0;
    let cfg = CavityConfig::new(
        a,
        InterfaceSpec::vacuum(temperature),
        InterfaceSpec::vacuum(temperature),
    )?;
    let settings = QSettings {
        rel_tol: 1e-12,
        ..QSettings::for_gap(a, omega)
    };
    let failure = std::cell::RefCell::new(None);
    let integral = integrate_propagating(
        |q, _| match energy_per_area(&cfg, SpectralPoint::radial(omega, q)) {
            Ok(u) => q * u.value / a,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        },
        omega,
        &settings,
    )?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(integral.value / (4.0 * PI * PI))
}

/// Closed form `ω³/(2π²)(N + ½)` with `N` the Bose-Einstein occupation.
pub fn planck_closed_form(temperature: f64, omega: f64) -> f64 {
    let half_plus_n = if temperature == 0.0 {
        0.5
    } else {
        0.5 + (omega / temperature).exp_m1().recip()
    };
    omega.powi(3) / (2.0 * PI * PI) * half_plus_n
}

/// Integrand over `q dq/2π` of the vacuum-subtracted energy density in a
/// cavity of two identical plates at rest and zero temperature, written in
/// terms of the reflection amplitudes only. It is the positive-frequency
/// spectrum, so it equals `2 (u − u₀)` at `ω > 0`.
pub fn sopova_ford_integrand(rs: C64, rp: C64, omega: f64, q: f64, z: f64, a: f64) -> Result<f64> {
    let pt = SpectralPoint::radial(omega, q);
    let wn = wave_numbers(pt)?;
    let w2 = omega * omega;
    let q2 = q * q;
    let one = C64::new(1.0, 0.0);
    let mut total = 0.0;
    // p-polarization enters through R → −R_p
    for r in [rs, -rp] {
        if wn.is_propagating() {
            let v = wn.qz.re;
            let e2 = C64::from_polar(1.0, 2.0 * v * a);
            let den = (one - r * r * e2).norm_sqr();
            let first = 2.0 * w2 * ((r * r * e2).re - r.norm_sqr().powi(2)) / (v * den);
            let second = 2.0 * q2 * (2.0 * v * z).cos() * (1.0 - r.norm_sqr()) * (r * C64::from_polar(1.0, v * a)).re
                / (v * den);
            total += first + second;
        } else {
            let kappa = wn.qz.im;
            let damp = (-kappa * a).exp();
            let den = (one - r * r * damp * damp).norm_sqr();
            let first = 2.0 * w2 * damp * damp * (r * r).im / (kappa * den);
            let second =
                2.0 * q2 * (2.0 * kappa * z).cosh() * damp * (1.0 + r.norm_sqr() * damp * damp) * r.im / (kappa * den);
            total += first + second;
        }
    }
    Ok(total)
}

/// `sopova_ford_integrand` for a material at rest.
pub fn sopova_ford_reference(material: Material, omega: f64, q: f64, z: f64, a: f64) -> Result<f64> {
    let r = material.rest_reflection(SpectralPoint::radial(omega, q))?.matrix;
    sopova_ford_integrand(r.ss(), r.pp(), omega, q, z, a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConicKind {
    Circle,
    Ellipse,
    Hyperbola,
}

/// Border of the region where waves propagate inside a dielectric of
/// index `n` sliding with velocity `v`, at fixed lab frequency ω:
/// `A qx² + B qx + C qy² = D`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolaritonCone {
    pub n: f64,
    pub v: f64,
    pub omega: f64,
    pub kind: ConicKind,
    pub a_xx: f64,
    pub b_x: f64,
    pub c_yy: f64,
    pub d: f64,
    /// `ω (v + n)/(1 + n v)`.
    pub qx1: f64,
    /// `ω (v − n)/(1 − n v)`.
    pub qx2: f64,
}

impl PolaritonCone {
    /// `A qx² + B qx + C qy² − D`, zero on the border.
    pub fn residual(&self, qx: f64, qy: f64) -> f64 {
        self.a_xx * qx * qx + self.b_x * qx + self.c_yy * qy * qy - self.d
    }

    /// Whether the co-moving medium wave number is real at `(qx, qy)`.
    pub fn contains(&self, qx: f64, qy: f64) -> bool {
        let g2 = 1.0 / (1.0 - self.v * self.v);
        let wp = self.omega - self.v * qx;
        let qxp = qx - self.v * self.omega;
        g2 * (self.n * self.n * wp * wp - qxp * qxp) - qy * qy > 0.0
    }

    /// Positive `qy` on the border at `qx`, if any.
    pub fn qy_on_border(&self, qx: f64) -> Option<f64> {
        let rhs = (self.d - self.a_xx * qx * qx - self.b_x * qx) / self.c_yy;
        (rhs >= 0.0).then(|| rhs.sqrt())
    }
}

pub fn polariton_cone(n: f64, v: f64, omega: f64) -> Result<PolaritonCone> {
    if !(n >= 1.0) {
        return Err(Error::invalid("n", "must be ≥ 1"));
    }
    if !(v.abs() < 1.0) {
        return Err(Error::Superluminal(v));
    }
    let nv = n * v;
    if (nv - 1.0).abs() == 0.0 || (nv + 1.0).abs() == 0.0 {
        return Err(Error::DegenerateConic);
    }
    let a_xx = 1.0 - nv * nv;
    let kind = if v == 0.0 {
        ConicKind::Circle
    } else if a_xx > 0.0 {
        ConicKind::Ellipse
    } else {
        ConicKind::Hyperbola
    };
    Ok(PolaritonCone {
        n,
        v,
        omega,
        kind,
        a_xx,
        b_x: 2.0 * (n * n - 1.0) * v * omega,
        c_yy: 1.0 - v * v,
        d: (n * n - v * v) * omega * omega,
        qx1: omega * (v + n) / (1.0 + nv),
        qx2: omega * (v - n) / (1.0 - nv),
    })
}

/// `q'_zε` of the boosted point, for checking the cone border.
pub fn comoving_medium_wave_number(n: f64, v: f64, pt: SpectralPoint) -> Result<C64> {
    let rest = lorentz_spectral(pt, v)?;
    Ok(medium_wave_number(C64::new(n * n, 0.0), rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::DrudeImpedance;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
    }

    #[test]
    fn weights_follow_table() {
        for pt in [SpectralPoint::radial(1.3, 0.4), SpectralPoint::radial(0.9, 2.2)] {
            let t = WeightTable::new(pt).unwrap();
            let (w2, q2) = (pt.omega * pt.omega, pt.q_sqr());
            let wn = wave_numbers(pt).unwrap();
            for nu in Side::BOTH {
                for nup in Side::BOTH {
                    let s = nu.sign() * nup.sign();
                    let (ws, wp) = if wn.is_propagating() {
                        let v = wn.qz.re;
                        (
                            w2 * (1.0 + s) + q2 * (1.0 - s),
                            (pt.omega / v).powi(2) * (w2 * (s + 1.0) + q2 * (s - 1.0)),
                        )
                    } else {
                        let k = wn.qz.im;
                        (
                            w2 * (1.0 - s) + q2 * (1.0 + s),
                            (pt.omega / k).powi(2) * (w2 * (s - 1.0) + q2 * (s + 1.0)),
                        )
                    };
                    assert!(rel(t.weight(nu, nup, Polarization::S), ws) < 1e-14);
                    assert!((t.weight(nu, nup, Polarization::P) - wp).abs() < 1e-13 * (1.0 + wp.abs()));
                }
            }
        }
    }

    #[test]
    fn free_space_density() {
        let cfg = CavityConfig::new(1.0, InterfaceSpec::vacuum(0.0), InterfaceSpec::vacuum(0.0)).unwrap();
        let u = energy_density(&cfg, SpectralPoint::radial(2.0, 0.0), 0.1).unwrap();
        assert!((u - 2.0).abs() < 1e-14);

        let cfg = CavityConfig::new(0.7, InterfaceSpec::vacuum(0.8), InterfaceSpec::vacuum(0.8)).unwrap();
        for pt in [
            SpectralPoint::new(1.0, 0.3, 0.5),
            SpectralPoint::new(-1.2, 0.3, 0.5),
            SpectralPoint::radial(1.0, 1.5),
        ] {
            let u = energy_density(&cfg, pt, -0.2).unwrap();
            let expect = free_energy_density(pt, 0.8).unwrap();
            assert!((u - expect).abs() < 1e-13 * (1.0 + expect.abs()));
            let big_u = energy_per_area(&cfg, pt).unwrap().value;
            assert!((big_u - 0.7 * expect).abs() < 1e-13 * (1.0 + expect.abs()));
        }
    }

    #[test]
    fn density_is_real_and_even() {
        let cfg = CavityConfig::new(
            0.6,
            InterfaceSpec::at_rest(Material::Dielectric { n: 1.3, delta: 0.05 }, 1.3),
            InterfaceSpec::sliding(Material::Dielectric { n: 1.8, delta: 0.1 }, 0.7, 0.4),
        )
        .unwrap();
        for pt in [SpectralPoint::new(1.0, 0.3, 0.4), SpectralPoint::new(1.0, 1.8, -0.6)] {
            let a = kg_amplitudes(&cfg, pt).unwrap();
            let u = energy_density_complex(&a, 0.1).unwrap();
            assert!(u.im.abs() < 1e-12 * (1.0 + u.re.abs()));
            let neg = energy_density(&cfg, pt.negated(), 0.1).unwrap();
            assert!(rel(neg, u.re) < 1e-11);
        }
    }

    #[test]
    fn field_route_matches_table() {
        let metal = Material::Metal(DrudeImpedance::new(30.0, 1.1).unwrap());
        let cfg = CavityConfig::new(
            0.9,
            InterfaceSpec::at_rest(Material::Dielectric { n: 1.3, delta: 0.05 }, 1.3),
            InterfaceSpec::at_rest(metal, 0.7),
        )
        .unwrap();
        for pt in [
            SpectralPoint::new(1.0, 0.3, 0.4),
            SpectralPoint::new(0.8, 1.9, 0.2),
            SpectralPoint::new(-1.5, 0.5, 0.1),
        ] {
            for z in [-0.3, 0.0, 0.41] {
                let a = energy_density(&cfg, pt, z).unwrap();
                let b = energy_density_from_fields(&cfg, pt, z).unwrap();
                assert!((a - b.re).abs() < 1e-10 * a.abs().max(1e-300), "{pt:?} {z}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn gap_integral_matches_trapezoid() {
        let cfg = CavityConfig::new(
            0.8,
            InterfaceSpec::at_rest(Material::Dielectric { n: 1.3, delta: 0.05 }, 1.0),
            InterfaceSpec::at_rest(Material::Metal(DrudeImpedance::new(30.0, 1.1).unwrap()), 0.2),
        )
        .unwrap();
        for pt in [SpectralPoint::new(1.0, 0.3, 0.4), SpectralPoint::new(1.0, 2.5, 0.0)] {
            let n = 2000;
            let h = cfg.a / n as f64;
            let mut acc = 0.0;
            for k in 0..=n {
                let z = -0.5 * cfg.a + k as f64 * h;
                let w = if k == 0 || k == n { 0.5 } else { 1.0 };
                acc += w * energy_density(&cfg, pt, z).unwrap();
            }
            acc *= h;
            let exact = energy_per_area(&cfg, pt).unwrap().value;
            assert!(rel(acc, exact) < 1e-6, "{acc} vs {exact}");
        }
        assert_eq!(gap_integral(C64::new(1e-10, 0.0), 2.0, 1e-8), C64::new(2.0, 0.0));
    }

    #[test]
    fn planck_limits() {
        let t0 = planck_spectrum(0.0, 1.3).unwrap();
        assert!(rel(t0, 1.3f64.powi(3) / (4.0 * PI * PI)) < 1e-10);
        let w = 0.9;
        let v = planck_spectrum(w, w).unwrap();
        let expect = w.powi(3) / (2.0 * PI * PI) * (1.0 / (1f64.exp() - 1.0) + 0.5);
        assert!(rel(v, expect) < 1e-10);
        assert!(rel(planck_closed_form(w, w), expect) < 1e-14);
    }

    #[test]
    fn sopova_ford_matches_keldysh_path() {
        let n = 1.3;
        let a = 0.4;
        let mat = Material::Dielectric { n, delta: 0.03 };
        let cfg = CavityConfig::new(a, InterfaceSpec::at_rest(mat, 0.0), InterfaceSpec::at_rest(mat, 0.0)).unwrap();
        for q in [0.2, 0.7, 1.1, 1.25, 2.0, 4.5] {
            for z in [-0.15, 0.0, 0.1] {
                let pt = SpectralPoint::radial(1.0, q);
                let kg = 2.0 * energy_density_renormalized(&cfg, pt, z, 0.0).unwrap();
                let sf = sopova_ford_reference(mat, 1.0, q, z, a).unwrap();
                assert!((kg - sf).abs() < 1e-8 * (1.0 + kg.abs()), "q={q} z={z}: {kg} vs {sf}");
            }
        }
    }

    #[test]
    fn sopova_ford_cases() {
        let zero = C64::new(0.0, 0.0);
        for q in [0.3, 2.0] {
            assert_eq!(sopova_ford_integrand(zero, zero, 1.0, q, 0.1, 0.5).unwrap(), 0.0);
        }
        let mat = Material::Dielectric { n: 1.6, delta: 0.2 };
        for q in [0.3, 1.4] {
            let a = sopova_ford_reference(mat, 1.0, q, 0.13, 0.5).unwrap();
            let b = sopova_ford_reference(mat, 1.0, q, -0.13, 0.5).unwrap();
            assert!(rel(a, b) < 1e-14);
        }
    }

    #[test]
    fn cone_cases() {
        let c = polariton_cone(1.3, 0.0, 1.0).unwrap();
        assert_eq!(c.kind, ConicKind::Circle);
        assert!((c.qx1 - 1.3).abs() < 1e-15 && (c.qx2 + 1.3).abs() < 1e-15);
        assert!(c.residual(0.0, 1.3).abs() < 1e-14);

        let c = polariton_cone(1.3, 0.5, 1.0).unwrap();
        assert_eq!(c.kind, ConicKind::Ellipse);
        let c = polariton_cone(1.3, 0.9, 1.0).unwrap();
        assert_eq!(c.kind, ConicKind::Hyperbola);
        assert!(matches!(polariton_cone(2.0, 0.5, 1.0), Err(Error::DegenerateConic)));
    }

    #[test]
    fn cone_border_is_medium_cutoff() {
        for (n, v) in [(1.3, 0.5), (1.3, 0.9), (2.0, 0.3)] {
            let c = polariton_cone(n, v, 1.0).unwrap();
            for qx in [c.qx1, c.qx2] {
                let k = comoving_medium_wave_number(n, v, SpectralPoint::new(1.0, qx, 0.0)).unwrap();
                assert!(k.norm() < 1e-7, "{k}");
                assert!(c.residual(qx, 0.0).abs() < 1e-12);
            }
            for qx in [0.1, 0.5, 1.0] {
                if let Some(qy) = c.qy_on_border(qx) {
                    let pt = SpectralPoint::new(1.0, qx, qy);
                    let rest = lorentz_spectral(pt, v).unwrap();
                    let gap = n * n * rest.omega * rest.omega - rest.q_sqr();
                    assert!(gap.abs() < 1e-12, "{gap}");
                }
            }
        }
    }
}
