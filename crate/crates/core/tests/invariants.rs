use casimir_keldysh::energy::{energy_density, energy_density_complex, energy_per_area};
use casimir_keldysh::greens::{cavity_advanced, cavity_retarded, gamma_surface, verify_surface_identity};
use casimir_keldysh::keldysh::{kg_amplitudes, kg_function, kg_function_from_sources};
use casimir_keldysh::materials::{admittance, dielectric_reflection};
use casimir_keldysh::sources::{emission_matrix, ThermalFactor};
use casimir_keldysh::spectral::{g_matrix, wave_numbers};
use casimir_keldysh::{
    CavityConfig, DrudeImpedance, Error, Floors, InterfaceSpec, Material, SpectralPoint, WeylMatrix, C64,
};
use proptest::prelude::*;

fn scale(m: &WeylMatrix) -> f64 {
    1.0 + m.max_abs()
}

/// Spectral points at least `0.05` away from the light cone in `ω² − q²`.
fn point() -> impl Strategy<Value = SpectralPoint> {
    (0.2f64..3.0, 0.0f64..4.0, 0.0f64..std::f64::consts::TAU, any::<bool>())
        .prop_filter("near light cone", |(w, q, _, _)| (w * w - q * q).abs() > 0.05)
        .prop_map(|(w, q, phi, neg)| {
            let w = if neg { -w } else { w };
            SpectralPoint::new(w, q * phi.cos(), q * phi.sin())
        })
}

fn material() -> impl Strategy<Value = Material> {
    prop_oneof![
        (1.0f64..3.0, 0.0f64..0.5).prop_map(|(n, delta)| Material::Dielectric { n, delta }),
        (5.0f64..50.0, 0.5f64..5.0).prop_map(|(wp, tau)| Material::Metal(DrudeImpedance::new(wp, tau).unwrap())),
    ]
}

fn cavity() -> impl Strategy<Value = CavityConfig> {
    (
        0.2f64..2.0,
        material(),
        material(),
        0.0f64..2.0,
        0.0f64..2.0,
        -0.8f64..0.8,
    )
        .prop_map(|(a, lo, up, tl, tu, v)| {
            CavityConfig::new(a, InterfaceSpec::at_rest(lo, tl), InterfaceSpec::sliding(up, tu, v)).unwrap()
        })
}

fn resting_cavity() -> impl Strategy<Value = CavityConfig> {
    (0.2f64..2.0, material(), material(), 0.0f64..2.0, 0.0f64..2.0).prop_map(|(a, lo, up, tl, tu)| {
        CavityConfig::new(a, InterfaceSpec::at_rest(lo, tl), InterfaceSpec::at_rest(up, tu)).unwrap()
    })
}

fn skip_resonance<T>(r: casimir_keldysh::Result<T>) -> Result<T, TestCaseError> {
    match r {
        Err(Error::CavityResonance { .. }) => Err(TestCaseError::reject("cavity resonance")),
        other => Ok(other.unwrap()),
    }
}

proptest! {
    #[test]
    fn normal_wave_number_reflects_under_frequency_sign(pt in point()) {
        let a = wave_numbers(pt).unwrap().qz;
        let b = wave_numbers(pt.negated()).unwrap().qz;
        prop_assert!((b + a.conj()).norm() < 1e-14 * (1.0 + a.norm()));
    }

    #[test]
    fn gap_phase_decays_with_distance(pt in point(), a in 0.1f64..5.0, step in 0.01f64..2.0) {
        let wn = wave_numbers(pt).unwrap();
        let m = |d: f64| (C64::i() * wn.qz * d).exp().norm();
        if wn.is_propagating() {
            prop_assert!((m(a + step) - m(a)).abs() < 1e-14);
        } else {
            prop_assert!(m(a + step) < m(a));
        }
    }

    #[test]
    fn reflection_metric_symmetry_and_reality(pt in point(), m in material(), v in -0.8f64..0.8) {
        let floors = Floors::default();
        let r = m.lab_reflection(pt, v, &floors).unwrap();
        let g = g_matrix(pt).unwrap();
        prop_assert!((g * r.matrix.transpose() - r.matrix * g).max_abs() < 1e-12 * scale(&r.matrix));
        let neg = m.lab_reflection(pt.negated(), v, &floors).unwrap();
        prop_assert!((neg.matrix - r.matrix.conj()).max_abs() < 1e-12 * scale(&r.matrix));
    }

    #[test]
    fn boosted_cross_polarization_ratio(pt in point(), m in material(), v in -0.8f64..0.8) {
        let r = m.lab_reflection(pt, v, &Floors::default()).unwrap().matrix;
        let qz = wave_numbers(pt).unwrap().qz;
        let ratio = qz * qz / (pt.omega * pt.omega);
        prop_assert!((r.ps() - r.sp() * ratio).norm() < 1e-12 * scale(&r));
        let rest = m.lab_reflection(pt, 0.0, &Floors::default()).unwrap().matrix;
        prop_assert!(rest.is_diagonal());
    }

    #[test]
    fn lossless_dielectric_is_passive(pt in point(), n in 1.0f64..4.0) {
        prop_assume!(wave_numbers(pt).unwrap().is_propagating());
        let r = dielectric_reflection(n, 0.0, pt).unwrap().matrix;
        prop_assert!(r.ss().norm() <= 1.0 + 1e-14);
        prop_assert!(r.pp().norm() <= 1.0 + 1e-14);
    }

    #[test]
    fn retarded_reciprocity_and_reality(cfg in cavity(), pt in point(), u in 0.0f64..1.0, up in 0.0f64..1.0) {
        let (z, zp) = (cfg.a * (u - 0.5), cfg.a * (up - 0.5));
        let d = skip_resonance(cavity_retarded(&cfg, pt, z, zp))?;
        let swapped = cavity_retarded(&cfg, pt, zp, z).unwrap();
        prop_assert!((d - swapped.transpose()).max_abs() < 1e-12 * scale(&d));
        let neg = cavity_retarded(&cfg, pt.negated(), z, zp).unwrap();
        prop_assert!((neg - d.conj()).max_abs() < 1e-12 * scale(&d));
        let adv = cavity_advanced(&cfg, pt, z, zp).unwrap();
        prop_assert!((adv - swapped.adjoint()).max_abs() < 1e-12 * scale(&d));
    }

    #[test]
    fn multiple_reflection_inverses_are_metric_transposes(cfg in cavity(), pt in point()) {
        let resp = skip_resonance(cfg.response(pt))?;
        let g = g_matrix(pt).unwrap();
        let lhs = resp.u_mp_inv * g;
        let rhs = g * resp.u_pm_inv.transpose();
        prop_assert!((lhs - rhs).max_abs() < 1e-11 * scale(&lhs));
    }

    #[test]
    fn surface_identity_holds(cfg in cavity(), pt in point(), u in 0.0f64..1.0, up in 0.0f64..1.0) {
        let (z, zp) = (cfg.a * (u - 0.5), cfg.a * (up - 0.5));
        let check = skip_resonance(verify_surface_identity(&cfg, pt, z, zp))?;
        prop_assert!(check.relative() < 1e-9, "{:?}", check);
    }

    #[test]
    fn surface_source_strength_structure(pt in point(), m in material(), v in -0.8f64..0.8) {
        prop_assume!(!matches!(m, Material::PerfectMirror));
        let r = m.lab_reflection(pt, v, &Floors::default()).unwrap();
        let y = admittance(&r).unwrap();
        let gamma = gamma_surface(&y, pt).unwrap();
        let s = scale(&gamma);
        prop_assert!((gamma + gamma.adjoint()).max_abs() < 1e-11 * s);
        prop_assert!((gamma - gamma.transpose()).max_abs() < 1e-11 * s);
        prop_assert!((gamma + gamma.conj()).max_abs() < 1e-11 * s);
    }

    #[test]
    fn resting_emission_is_positive(pt in point(), m in material(), t in 0.0f64..2.0, a in 0.1f64..2.0) {
        prop_assume!(wave_numbers(pt).unwrap().is_propagating());
        let r = m.rest_reflection(pt).unwrap().matrix;
        let eta = ThermalFactor::new(pt.omega, t).eta;
        let gamma = emission_matrix(&r, eta, pt, a).unwrap();
        for k in 0..2 {
            let e = C64::i() * gamma.get(k, k) / eta * pt.omega.signum();
            prop_assert!(e.im.abs() < 1e-12 * (1.0 + e.norm()));
            prop_assert!(e.re >= -1e-12);
        }
    }

    #[test]
    fn keldysh_assembly_paths_agree(cfg in cavity(), pt in point(), u in 0.0f64..1.0, up in 0.0f64..1.0) {
        let (z, zp) = (cfg.a * (u - 0.5), cfg.a * (up - 0.5));
        let a = skip_resonance(kg_function(&cfg, pt, z, zp))?;
        let b = kg_function_from_sources(&cfg, pt, z, zp).unwrap();
        prop_assert!((a - b).max_abs() < 1e-10 * scale(&a));
    }

    #[test]
    fn keldysh_antihermitian_and_odd(cfg in cavity(), pt in point(), u in 0.0f64..1.0, up in 0.0f64..1.0) {
        let (z, zp) = (cfg.a * (u - 0.5), cfg.a * (up - 0.5));
        let k = skip_resonance(kg_amplitudes(&cfg, pt))?;
        let d = k.eval(z, zp);
        prop_assert!((d.adjoint() + k.eval(zp, z)).max_abs() < 1e-11 * scale(&d));
        let neg = kg_amplitudes(&cfg, pt.negated()).unwrap().eval(z, zp);
        prop_assert!((neg + d.conj()).max_abs() < 1e-11 * scale(&d));
    }

    #[test]
    fn equilibrium_fluctuation_dissipation(
        a in 0.2f64..2.0, lo in material(), up in material(), t in 0.05f64..2.0,
        pt in point(), u in 0.0f64..1.0, upos in 0.0f64..1.0,
    ) {
        let cfg = CavityConfig::new(a, InterfaceSpec::at_rest(lo, t), InterfaceSpec::at_rest(up, t)).unwrap();
        let (z, zp) = (a * (u - 0.5), a * (upos - 0.5));
        let k = skip_resonance(kg_function(&cfg, pt, z, zp))?;
        let spectral = cavity_retarded(&cfg, pt, z, zp).unwrap() - cavity_advanced(&cfg, pt, z, zp).unwrap();
        let eta = ThermalFactor::new(pt.omega, t).eta;
        prop_assert!((k - spectral * eta).max_abs() < 1e-10 * scale(&k));
    }

    #[test]
    fn energy_density_is_real(cfg in cavity(), pt in point(), u in 0.0f64..1.0) {
        let amps = skip_resonance(kg_amplitudes(&cfg, pt))?;
        let e = energy_density_complex(&amps, cfg.a * (u - 0.5)).unwrap();
        prop_assert!(e.im.abs() < 1e-12 * (1.0 + e.re.abs()));
    }

    #[test]
    fn unsubtracted_spectrum_is_nonnegative(cfg in resting_cavity(), pt in point(), u in 0.0f64..1.0) {
        let z = cfg.a * (u - 0.5);
        let density = skip_resonance(energy_density(&cfg, pt, z))?;
        prop_assert!(density >= -1e-12 * (1.0 + density.abs()));
        let total = energy_per_area(&cfg, pt).unwrap().value;
        prop_assert!(total >= -1e-12 * (1.0 + total.abs()));
    }

    #[test]
    fn symmetric_cavity_density_is_even(a in 0.2f64..2.0, m in material(), t in 0.0f64..2.0, pt in point(), u in 0.0f64..1.0) {
        let cfg = CavityConfig::new(a, InterfaceSpec::at_rest(m, t), InterfaceSpec::at_rest(m, t)).unwrap();
        let z = a * (u - 0.5);
        let up = skip_resonance(energy_density(&cfg, pt, z))?;
        let down = energy_density(&cfg, pt, -z).unwrap();
        prop_assert!((up - down).abs() < 1e-11 * (1.0 + up.abs()));
    }
}
