//! Keldysh-Green function of the cavity, assembled from the wall
//! reflection matrices and the photon sources of both bodies.
//!
//! Inside the gap the function is a sum of four plane-wave products,
//! `D̂ᴷ(z, z') = Σ D̂^{νν'} e^{i(ν qz z − ν' qz* z')}`.

use crate::error::Result;
use crate::greens::{normal_components, CavityConfig, CavityResponse, ExpTerm, ModeExpansion, NormalComponents, Side};
use crate::materials::Material;
use crate::sources::{doppler_frequency, emission_from, interface_source_with, ThermalFactor};
use crate::spectral::{check_light_cone, delta0_from, wave_numbers, Floors, SpectralPoint};
use crate::weyl::WeylMatrix;
use crate::C64;

/// The four amplitudes `D̂^{νν'}`, indexed `[ν][ν']` with 0 = −, 1 = +.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KGAmplitudes {
    pub pt: SpectralPoint,
    pub qz: C64,
    pub d: [[WeylMatrix; 2]; 2],
}

impl KGAmplitudes {
    pub fn get(&self, nu: Side, nu_prime: Side) -> WeylMatrix {
        self.d[nu.index()][nu_prime.index()]
    }

    pub fn expansion(&self) -> ModeExpansion {
        let qz = self.qz;
        let term = |nu: Side, nup: Side| ExpTerm::new(self.get(nu, nup), qz * nu.sign(), -qz.conj() * nup.sign());
        ModeExpansion {
            free: WeylMatrix::ZERO,
            qz,
            terms: [
                term(Side::Lower, Side::Lower),
                term(Side::Lower, Side::Upper),
                term(Side::Upper, Side::Upper),
                term(Side::Upper, Side::Lower),
            ],
        }
    }

    pub fn eval(&self, z: f64, z_prime: f64) -> WeylMatrix {
        self.expansion().eval(z, z_prime)
    }

    pub fn sub(&self, other: &KGAmplitudes) -> KGAmplitudes {
        let mut d = self.d;
        for (row, orow) in d.iter_mut().zip(other.d.iter()) {
            for (x, y) in row.iter_mut().zip(orow.iter()) {
                *x = *x - *y;
            }
        }
        KGAmplitudes { d, ..*self }
    }
}

/// Thermal factor of one wall at `pt`, Doppler shifted for a moving body.
pub fn wall_thermal_factor(cfg: &CavityConfig, side: Side, pt: SpectralPoint) -> Result<f64> {
    let spec = cfg.interface(side);
    Ok(ThermalFactor::new(doppler_frequency(pt, spec.velocity)?, spec.temperature).eta)
}

/// Amplitudes of the cavity Keldysh-Green function.
pub fn kg_amplitudes(cfg: &CavityConfig, pt: SpectralPoint) -> Result<KGAmplitudes> {
    let resp = cfg.response(pt)?;
    let eta_minus = wall_thermal_factor(cfg, Side::Lower, pt)?;
    let eta_plus = wall_thermal_factor(cfg, Side::Upper, pt)?;
    Ok(amplitudes_from(&resp, eta_minus, eta_plus))
}

pub(crate) fn amplitudes_from(resp: &CavityResponse, eta_minus: f64, eta_plus: f64) -> KGAmplitudes {
    let (qz, a) = (resp.qz, resp.a);
    let (rm, rp) = (resp.r_minus, resp.r_plus);
    let omega = resp.pt.omega;
    let gamma_minus = emission_from(&rm, eta_minus, omega, qz, a);
    let gamma_plus = emission_from(&rp, eta_plus, omega, qz, a);
    let t_minus = resp.u_mp_inv * gamma_minus * resp.u_mp_inv.adjoint();
    let t_plus = resp.u_pm_inv * gamma_plus * resp.u_pm_inv.adjoint();
    let damp = (-2.0 * qz.im * a).exp();
    let e_in = (C64::i() * qz * a).exp();
    let e_out = (-C64::i() * qz.conj() * a).exp();

    let d_mm = t_plus + (rp * t_minus * rp.adjoint()).scale_re(damp);
    let d_pp = t_minus + (rm * t_plus * rm.adjoint()).scale_re(damp);
    let d_mp = (rp * t_minus).scale(e_in) + (t_plus * rm.adjoint()).scale(e_out);
    let d_pm = (rm * t_plus).scale(e_in) + (t_minus * rp.adjoint()).scale(e_out);
    KGAmplitudes {
        pt: resp.pt,
        qz,
        d: [[d_mm, d_mp], [d_pm, d_pp]],
    }
}

/// Amplitudes of the free-space Keldysh-Green function at temperature
/// `temperature`; only the propagating sector carries fluctuations.
pub fn free_kg_amplitudes(pt: SpectralPoint, temperature: f64) -> Result<KGAmplitudes> {
    let wn = wave_numbers(pt)?;
    check_light_cone(pt, Floors::default().light_cone)?;
    let eta = ThermalFactor::new(pt.omega, temperature).eta;
    let gamma = if wn.is_propagating() {
        delta0_from(pt.omega, wn.qz).scale_re(eta)
    } else {
        WeylMatrix::ZERO
    };
    Ok(KGAmplitudes {
        pt,
        qz: wn.qz,
        d: [[gamma, WeylMatrix::ZERO], [WeylMatrix::ZERO, gamma]],
    })
}

/// `D̂ᴷ(z, z')` from the amplitude expansion.
pub fn kg_function(cfg: &CavityConfig, pt: SpectralPoint, z: f64, z_prime: f64) -> Result<WeylMatrix> {
    cfg.check_in_gap(z)?;
    cfg.check_in_gap(z_prime)?;
    Ok(kg_amplitudes(cfg, pt)?.eval(z, z_prime))
}

/// `D̂ᴷ(z, z') = Σν D̂ᴿ(z, νa/2) P̂(ν) D̂ᴬ(νa/2, z')`, built from the
/// retarded function and the surface sources.
pub fn kg_function_from_sources(cfg: &CavityConfig, pt: SpectralPoint, z: f64, z_prime: f64) -> Result<WeylMatrix> {
    cfg.check_in_gap(z)?;
    cfg.check_in_gap(z_prime)?;
    let dr = cfg.response(pt)?.retarded();
    let mut out = WeylMatrix::ZERO;
    for side in Side::BOTH {
        let spec = cfg.interface(side);
        let x = side.position(cfg.a);
        let p = interface_source_with(spec, side, pt, &cfg.floors)?.matrix;
        out += dr.eval(z, x) * p * dr.eval(x, z_prime).conj();
    }
    Ok(out)
}

/// `D̂ᴷ − Δ̂ᴷ` with the free-space function at `t_env`.
pub fn kg_renormalized(cfg: &CavityConfig, pt: SpectralPoint, z: f64, z_prime: f64, t_env: f64) -> Result<WeylMatrix> {
    cfg.check_in_gap(z)?;
    cfg.check_in_gap(z_prime)?;
    Ok(kg_renormalized_amplitudes(cfg, pt, t_env)?.eval(z, z_prime))
}

pub fn kg_renormalized_amplitudes(cfg: &CavityConfig, pt: SpectralPoint, t_env: f64) -> Result<KGAmplitudes> {
    Ok(kg_amplitudes(cfg, pt)?.sub(&free_kg_amplitudes(pt, t_env)?))
}

/// Normal components of `D̂ᴷ`.
pub fn kg_normal_components(cfg: &CavityConfig, pt: SpectralPoint, z: f64, z_prime: f64) -> Result<NormalComponents> {
    cfg.check_in_gap(z)?;
    cfg.check_in_gap(z_prime)?;
    normal_components(&kg_amplitudes(cfg, pt)?.expansion(), pt, z, z_prime)
}

/// Keldysh-Green function for a single body in local equilibrium, facing
/// empty space at temperature `t_env`. The body fills `z < −a/2`
/// (`Side::Lower`) or `z > a/2` (`Side::Upper`).
pub fn single_interface_kg(
    side: Side,
    body: Material,
    temperature: f64,
    t_env: f64,
    a: f64,
    pt: SpectralPoint,
) -> Result<KGAmplitudes> {
    use crate::greens::InterfaceSpec;
    let walls = match side {
        Side::Lower => (InterfaceSpec::at_rest(body, temperature), InterfaceSpec::vacuum(t_env)),
        Side::Upper => (InterfaceSpec::vacuum(t_env), InterfaceSpec::at_rest(body, temperature)),
    };
    kg_amplitudes(&CavityConfig::new(a, walls.0, walls.1)?, pt)
}
