//! Photon sources: free-space fluctuation spectra, thermal sources on the
//! bodies (Doppler shifted for a sliding body), and the emission matrices
//! `γ̂ν` they produce at the cavity walls.

use std::f64::consts::PI;

use crate::error::Result;
use crate::greens::{gamma_from, InterfaceSpec, Side};
use crate::materials::{admittance_with, lorentz_spectral, Material};
use crate::spectral::{check_light_cone, delta0_from, delta0_inverse_from, wave_numbers, Floors, SpectralPoint};
use crate::weyl::WeylMatrix;
use crate::C64;

/// `η = coth(ω_eff / 2T)`, with `η = sgn ω_eff` at `T = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalFactor {
    pub eta: f64,
}

impl ThermalFactor {
    pub fn new(omega_eff: f64, temperature: f64) -> Self {
        let eta = if temperature == 0.0 {
            omega_eff.signum()
        } else {
            (0.5 * omega_eff / temperature).tanh().recip()
        };
        ThermalFactor { eta }
    }
}

/// Frequency of a wave `pt` in the rest frame of a body moving with `v`.
pub fn doppler_frequency(pt: SpectralPoint, v: f64) -> Result<f64> {
    if v == 0.0 {
        return Ok(pt.omega);
    }
    Ok(lorentz_spectral(pt, v)?.omega)
}

/// Where a source sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceLocation {
    /// Free-space fluctuations entering through an open boundary.
    Free(Side),
    /// Thermal currents of the body at that boundary.
    Body(Side),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceStrength {
    pub matrix: WeylMatrix,
    pub pt: SpectralPoint,
    pub location: SourceLocation,
}

/// Photon occupation of free-space modes, for `ω > 0`.
///
/// `kz` is the normal component of the mode's wave vector; a source on the
/// free boundary ν feeds modes with `kz = −ν|qz|`.
pub trait PhotonOccupation {
    fn occupation(&self, omega: f64, qx: f64, qy: f64, kz: f64) -> WeylMatrix;
}

/// Isotropic Bose-Einstein occupation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalOccupation {
    pub temperature: f64,
}

impl PhotonOccupation for ThermalOccupation {
    fn occupation(&self, omega: f64, _qx: f64, _qy: f64, _kz: f64) -> WeylMatrix {
        if self.temperature == 0.0 {
            return WeylMatrix::ZERO;
        }
        let n = (omega / self.temperature).exp_m1().recip();
        WeylMatrix::real_diag(n, n)
    }
}

/// Free-space source `P̂₀(Ω, ν) = 𝒩ν(Ω) Γ̂⁰` at temperature `temperature`.
pub fn free_space_source(pt: SpectralPoint, side: Side, temperature: f64) -> Result<SourceStrength> {
    let wn = wave_numbers(pt)?;
    check_light_cone(pt, Floors::default().light_cone)?;
    let eta = ThermalFactor::new(pt.omega, temperature).eta;
    Ok(SourceStrength {
        matrix: free_gamma(pt.omega, wn.qz, wn.is_propagating()).scale_re(eta),
        pt,
        location: SourceLocation::Free(side),
    })
}

/// Free-space source for an arbitrary photon occupation.
pub fn free_space_source_with(
    pt: SpectralPoint,
    side: Side,
    occupation: &dyn PhotonOccupation,
) -> Result<SourceStrength> {
    let wn = wave_numbers(pt)?;
    check_light_cone(pt, Floors::default().light_cone)?;
    let kz = -side.sign() * wn.qz.norm();
    let factor = if pt.omega > 0.0 {
        WeylMatrix::IDENTITY + occupation.occupation(pt.omega, pt.qx, pt.qy, kz).scale_re(2.0)
    } else {
        -(WeylMatrix::IDENTITY + occupation.occupation(-pt.omega, -pt.qx, -pt.qy, kz).scale_re(2.0))
    };
    Ok(SourceStrength {
        matrix: factor * free_gamma(pt.omega, wn.qz, wn.is_propagating()),
        pt,
        location: SourceLocation::Free(side),
    })
}

/// `Γ̂⁰ = −Δ̂₀⁻¹ Θ(ω² − q²)`.
fn free_gamma(omega: f64, qz: C64, propagating: bool) -> WeylMatrix {
    if propagating {
        -delta0_inverse_from(omega, qz)
    } else {
        WeylMatrix::ZERO
    }
}

/// Thermal source of a body in equilibrium in its own rest frame.
pub fn interface_source(spec: &InterfaceSpec, side: Side, pt: SpectralPoint) -> Result<SourceStrength> {
    interface_source_with(spec, side, pt, &Floors::default())
}

pub fn interface_source_with(
    spec: &InterfaceSpec,
    side: Side,
    pt: SpectralPoint,
    floors: &Floors,
) -> Result<SourceStrength> {
    let wn = wave_numbers(pt)?;
    check_light_cone(pt, floors.light_cone)?;
    let eta = ThermalFactor::new(doppler_frequency(pt, spec.velocity)?, spec.temperature).eta;
    let gamma = match spec.material {
        // a perfect conductor neither emits nor absorbs
        Material::PerfectMirror => WeylMatrix::ZERO,
        _ => {
            let r = spec.reflection(pt, floors)?;
            let y = admittance_with(&r.matrix, floors.denominator)?;
            gamma_from(&y, pt.omega, wn.qz)
        }
    };
    Ok(SourceStrength {
        matrix: gamma.scale_re(eta),
        pt,
        location: SourceLocation::Body(side),
    })
}

/// Emission matrix `γ̂ν = e^{−Im qz a}(I + R̂ν) Δ̂₀ P̂(ν) Δ̂₀† (I + R̂ν†)`.
pub fn gamma_nu(r: &WeylMatrix, p: &WeylMatrix, pt: SpectralPoint, a: f64) -> Result<WeylMatrix> {
    let wn = wave_numbers(pt)?;
    check_light_cone(pt, Floors::default().light_cone)?;
    let d0 = delta0_from(pt.omega, wn.qz);
    let plus = WeylMatrix::IDENTITY + *r;
    Ok((plus * d0 * *p * d0.adjoint() * plus.adjoint()).scale_re((-wn.qz.im * a).exp()))
}

/// Emission matrix of a body in equilibrium with thermal factor `eta`,
/// written without the admittance so that it also covers `R̂ = −I`:
/// `γ̂ν = −(η/2) e^{−Im qz a} [(I − R̂) Δ̂₀† (I + R̂†) − h.c.]`.
pub fn emission_matrix(r: &WeylMatrix, eta: f64, pt: SpectralPoint, a: f64) -> Result<WeylMatrix> {
    let wn = wave_numbers(pt)?;
    check_light_cone(pt, Floors::default().light_cone)?;
    Ok(emission_from(r, eta, pt.omega, wn.qz, a))
}

pub(crate) fn emission_from(r: &WeylMatrix, eta: f64, omega: f64, qz: C64, a: f64) -> WeylMatrix {
    let d0 = delta0_from(omega, qz);
    let m = (WeylMatrix::IDENTITY - *r) * d0.adjoint() * (WeylMatrix::IDENTITY + r.adjoint());
    (m - m.adjoint()).scale_re(-0.5 * eta * (-qz.im * a).exp())
}

/// Closed form of the emission matrix for a body at rest (diagonal `R̂`):
/// propagating `−2πi g η (1 − |R|²)/qz`, evanescent
/// `−4πi g η e^{−κa} Im R / κ`.
pub fn emission_diagonal(rs: C64, rp: C64, eta: f64, pt: SpectralPoint, a: f64) -> Result<WeylMatrix> {
    let wn = wave_numbers(pt)?;
    check_light_cone(pt, Floors::default().light_cone)?;
    let qz = wn.qz;
    let g = [C64::new(1.0, 0.0), qz * qz / (pt.omega * pt.omega)];
    let entry = |k: usize, r: C64| -> C64 {
        if wn.is_propagating() {
            C64::new(0.0, -2.0 * PI * eta) * g[k] * (1.0 - r.norm_sqr()) / qz.re
        } else {
            let kappa = qz.im;
            C64::new(0.0, -4.0 * PI * eta * (-kappa * a).exp() * r.im / kappa) * g[k]
        }
    };
    Ok(WeylMatrix::diag(entry(0, rs), entry(1, rp)))
}
