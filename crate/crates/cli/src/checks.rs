//! Seeded invariant suite behind `--seed-check`.

use casimir_keldysh::greens::{cavity_advanced, cavity_retarded, gamma_surface, verify_surface_identity};
use casimir_keldysh::keldysh::{kg_amplitudes, kg_function, kg_function_from_sources};
use casimir_keldysh::materials::admittance;
use casimir_keldysh::sources::ThermalFactor;
use casimir_keldysh::spectral::g_matrix;
use casimir_keldysh::{
    CavityConfig, DrudeImpedance, Error as CoreError, InterfaceSpec, Material, Side, SpectralPoint, WeylMatrix,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed_cafe;
pub const DEFAULT_SAMPLES: usize = 200;

pub const SURFACE_IDENTITY_TOL: f64 = 1e-9;
pub const DUAL_PATH_TOL: f64 = 1e-10;
pub const FDT_TOL: f64 = 1e-10;
pub const SYMMETRY_TOL: f64 = 1e-11;

/// A spectral point with two positions in the gap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub pt: SpectralPoint,
    pub z: f64,
    pub z_prime: f64,
}

/// `n` samples alternating between the propagating and evanescent
/// sectors, with both frequency signs. Positions are uniform in a gap of
/// width `a`.
pub fn samples(seed: u64, n: usize, a: f64) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let w: f64 = rng.gen_range(0.3..3.0);
            let ratio: f64 = if i % 2 == 0 {
                rng.gen_range(0.0..0.97)
            } else {
                rng.gen_range(1.03..4.0)
            };
            let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let q = ratio * w;
            Sample {
                pt: SpectralPoint::new(sign * w, q * phi.cos(), q * phi.sin()),
                z: a * (rng.gen::<f64>() - 0.5),
                z_prime: a * (rng.gen::<f64>() - 0.5),
            }
        })
        .collect()
}

/// Two dielectrics at rest, a dielectric facing a Drude metal, and a
/// dielectric sliding at half the speed of light.
pub fn reference_cavities() -> Vec<(&'static str, CavityConfig)> {
    let lossy = Material::Dielectric { n: 1.3, delta: 0.05 };
    let dense = Material::Dielectric { n: 2.0, delta: 0.1 };
    let metal = Material::Metal(DrudeImpedance::new(25.0, 1.1).expect("valid Drude parameters"));
    let build = |lower, upper| CavityConfig::new(0.8, lower, upper).expect("valid cavity");
    vec![
        (
            "dielectrics",
            build(InterfaceSpec::at_rest(lossy, 1.3), InterfaceSpec::at_rest(dense, 0.7)),
        ),
        (
            "dielectric_metal",
            build(InterfaceSpec::at_rest(lossy, 1.3), InterfaceSpec::at_rest(metal, 0.7)),
        ),
        (
            "sliding",
            build(
                InterfaceSpec::at_rest(lossy, 1.3),
                InterfaceSpec::sliding(dense, 0.7, 0.5),
            ),
        ),
    ]
}

/// The same cavity with both walls at rest at temperature `t`.
pub fn equilibrium(cfg: &CavityConfig, t: f64) -> CavityConfig {
    let mut eq = *cfg;
    eq.lower.temperature = t;
    eq.upper.temperature = t;
    eq.upper.velocity = 0.0;
    eq
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub worst: f64,
    pub tolerance: f64,
    pub evaluated: usize,
    /// Samples dropped because they sit on a cavity resonance.
    pub resonant: usize,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.worst < self.tolerance && self.evaluated > 0
    }
}

impl std::fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {:<40} worst {:.3e} (tol {:.0e}, {} points",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.worst,
            self.tolerance,
            self.evaluated
        )?;
        if self.resonant > 0 {
            write!(f, ", {} resonant skipped", self.resonant)?;
        }
        write!(f, ")")
    }
}

fn rel(diff: WeylMatrix, reference: WeylMatrix) -> f64 {
    diff.max_abs() / (1.0 + reference.max_abs())
}

/// Runs `metric` over all samples and keeps the largest value.
pub fn worst_over(
    name: impl Into<String>,
    tolerance: f64,
    samples: &[Sample],
    metric: impl Fn(&Sample) -> casimir_keldysh::Result<f64>,
) -> casimir_keldysh::Result<CheckOutcome> {
    let mut out = CheckOutcome {
        name: name.into(),
        worst: 0.0,
        tolerance,
        evaluated: 0,
        resonant: 0,
    };
    for s in samples {
        match metric(s) {
            Ok(v) => {
                out.evaluated += 1;
                out.worst = if v.is_nan() { f64::INFINITY } else { out.worst.max(v) };
            }
            Err(CoreError::CavityResonance { .. }) => out.resonant += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

pub fn surface_identity(cfg: &CavityConfig, s: &Sample) -> casimir_keldysh::Result<f64> {
    Ok(verify_surface_identity(cfg, s.pt, s.z, s.z_prime)?.relative())
}

pub fn dual_path(cfg: &CavityConfig, s: &Sample) -> casimir_keldysh::Result<f64> {
    let a = kg_function(cfg, s.pt, s.z, s.z_prime)?;
    let b = kg_function_from_sources(cfg, s.pt, s.z, s.z_prime)?;
    Ok(rel(a - b, a))
}

/// `D^K − (D^R − D^A) coth(ω/2T)` for a cavity in equilibrium at `T`.
pub fn fluctuation_dissipation(cfg: &CavityConfig, s: &Sample) -> casimir_keldysh::Result<f64> {
    let t = cfg.lower.temperature;
    let k = kg_function(cfg, s.pt, s.z, s.z_prime)?;
    let spectral = cavity_retarded(cfg, s.pt, s.z, s.z_prime)? - cavity_advanced(cfg, s.pt, s.z, s.z_prime)?;
    Ok(rel(k - spectral * ThermalFactor::new(s.pt.omega, t).eta, k))
}

/// `ĝR̂ᵀ = R̂ĝ` and `R̂(−Ω) = R̂(Ω)*` for both walls.
pub fn reflection_symmetries(cfg: &CavityConfig, s: &Sample) -> casimir_keldysh::Result<f64> {
    let g = g_matrix(s.pt)?;
    let mut worst = 0.0f64;
    for side in Side::BOTH {
        let spec = cfg.interface(side);
        let r = spec.reflection(s.pt, &cfg.floors)?.matrix;
        let neg = spec.reflection(s.pt.negated(), &cfg.floors)?.matrix;
        worst = worst.max(rel(g * r.transpose() - r * g, r)).max(rel(neg - r.conj(), r));
    }
    Ok(worst)
}

/// `D̂ᴿ(z, z') = D̂ᴿ(z', z)ᵀ`.
pub fn reciprocity(cfg: &CavityConfig, s: &Sample) -> casimir_keldysh::Result<f64> {
    let d = cavity_retarded(cfg, s.pt, s.z, s.z_prime)?;
    let swapped = cavity_retarded(cfg, s.pt, s.z_prime, s.z)?;
    Ok(rel(d - swapped.transpose(), d))
}

/// `Û₋₊⁻¹ĝ = ĝ(Û₊₋⁻¹)ᵀ`.
pub fn multiple_reflection_symmetry(cfg: &CavityConfig, s: &Sample) -> casimir_keldysh::Result<f64> {
    let resp = cfg.response(s.pt)?;
    let g = g_matrix(s.pt)?;
    let lhs = resp.u_mp_inv * g;
    Ok(rel(lhs - g * resp.u_pm_inv.transpose(), lhs))
}

/// Surface source strengths are antihermitian, symmetric and imaginary.
pub fn source_strength_structure(cfg: &CavityConfig, s: &Sample) -> casimir_keldysh::Result<f64> {
    let mut worst = 0.0f64;
    for side in Side::BOTH {
        let r = cfg.interface(side).reflection(s.pt, &cfg.floors)?;
        let gamma = gamma_surface(&admittance(&r)?, s.pt)?;
        worst = worst
            .max(rel(gamma + gamma.adjoint(), gamma))
            .max(rel(gamma - gamma.transpose(), gamma))
            .max(rel(gamma + gamma.conj(), gamma));
    }
    Ok(worst)
}

/// `D̂ᴷ(z, z')† = −D̂ᴷ(z', z)`.
pub fn keldysh_antihermiticity(cfg: &CavityConfig, s: &Sample) -> casimir_keldysh::Result<f64> {
    let k = kg_amplitudes(cfg, s.pt)?;
    let d = k.eval(s.z, s.z_prime);
    Ok(rel(d.adjoint() + k.eval(s.z_prime, s.z), d))
}

type Metric = fn(&CavityConfig, &Sample) -> casimir_keldysh::Result<f64>;

/// The full suite on the reference cavities.
pub fn seed_check(seed: u64, n: usize) -> casimir_keldysh::Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    let symmetric: [(&str, Metric); 5] = [
        ("reflection metric symmetry and reality", reflection_symmetries),
        ("retarded reciprocity", reciprocity),
        ("multiple-reflection symmetry", multiple_reflection_symmetry),
        ("source strength structure", source_strength_structure),
        ("keldysh antihermiticity", keldysh_antihermiticity),
    ];
    for (label, cfg) in reference_cavities() {
        let pts = samples(seed, n, cfg.a);
        out.push(worst_over(
            format!("{label}: surface identity"),
            SURFACE_IDENTITY_TOL,
            &pts,
            |s| surface_identity(&cfg, s),
        )?);
        out.push(worst_over(
            format!("{label}: dual-path keldysh"),
            DUAL_PATH_TOL,
            &pts,
            |s| dual_path(&cfg, s),
        )?);
        if cfg.upper.velocity == 0.0 {
            let eq = equilibrium(&cfg, 1.0);
            out.push(worst_over(format!("{label}: equilibrium fdt"), FDT_TOL, &pts, |s| {
                fluctuation_dissipation(&eq, s)
            })?);
        }
        for (name, metric) in symmetric {
            out.push(worst_over(format!("{label}: {name}"), SYMMETRY_TOL, &pts, |s| {
                metric(&cfg, s)
            })?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_span_both_sectors() {
        let pts = samples(1, 40, 1.0);
        let prop = pts
            .iter()
            .filter(|s| s.pt.wave_numbers().unwrap().is_propagating())
            .count();
        assert_eq!(prop, 20);
        assert!(pts.iter().any(|s| s.pt.omega < 0.0));
        assert!(pts.iter().all(|s| s.z.abs() <= 0.5 && s.z_prime.abs() <= 0.5));
        assert_eq!(samples(1, 40, 1.0), pts);
    }

    #[test]
    fn short_suite_passes() {
        for outcome in seed_check(7, 20).unwrap() {
            assert!(outcome.passed(), "{outcome}");
        }
    }
}
