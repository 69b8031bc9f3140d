//! Retarded and advanced Green functions of the half-space and the planar
//! cavity, with analytic z-derivatives, boundary residuals and the
//! surface source strengths `Γ̂`.

use crate::error::{Error, Result};
use crate::materials::{admittance_with, Material, ReflectionMatrix};
use crate::spectral::{check_light_cone, delta0_from, delta0_inverse_from, wave_numbers, Floors, SpectralPoint};
use crate::weyl::WeylMatrix;
use crate::C64;

/// Which boundary of the cavity: the lower one at `z = −a/2` (ν = −) or
/// the upper one at `z = +a/2` (ν = +).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Lower,
    Upper,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Lower, Side::Upper];

    /// ν = ∓1.
    pub fn sign(self) -> f64 {
        match self {
            Side::Lower => -1.0,
            Side::Upper => 1.0,
        }
    }

    pub fn position(self, a: f64) -> f64 {
        0.5 * a * self.sign()
    }

    pub fn index(self) -> usize {
        match self {
            Side::Lower => 0,
            Side::Upper => 1,
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Lower => Side::Upper,
            Side::Upper => Side::Lower,
        }
    }
}

/// One cavity boundary: a body with its rest-frame temperature and its
/// tangential velocity along x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceSpec {
    pub material: Material,
    pub temperature: f64,
    pub velocity: f64,
}

impl InterfaceSpec {
    pub fn at_rest(material: Material, temperature: f64) -> Self {
        InterfaceSpec {
            material,
            temperature,
            velocity: 0.0,
        }
    }

    pub fn sliding(material: Material, temperature: f64, velocity: f64) -> Self {
        InterfaceSpec {
            material,
            temperature,
            velocity,
        }
    }

    /// Empty half-space at temperature `temperature`.
    pub fn vacuum(temperature: f64) -> Self {
        InterfaceSpec::at_rest(Material::vacuum(), temperature)
    }

    pub fn validate(&self) -> Result<()> {
        self.material.validate()?;
        if !(self.temperature >= 0.0 && self.temperature.is_finite()) {
            return Err(Error::invalid(
                "temperature",
                format!("{} must be ≥ 0", self.temperature),
            ));
        }
        if !(self.velocity.abs() < 1.0) {
            return Err(Error::Superluminal(self.velocity));
        }
        Ok(())
    }

    /// Laboratory-frame reflection matrix.
    pub fn reflection(&self, pt: SpectralPoint, floors: &Floors) -> Result<ReflectionMatrix> {
        self.material.lab_reflection(pt, self.velocity, floors)
    }
}

/// Gap width plus the two boundaries. The laboratory frame is the rest
/// frame of the lower body.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityConfig {
    pub a: f64,
    pub lower: InterfaceSpec,
    pub upper: InterfaceSpec,
    pub floors: Floors,
}

impl CavityConfig {
    pub fn new(a: f64, lower: InterfaceSpec, upper: InterfaceSpec) -> Result<Self> {
        let cfg = CavityConfig {
            a,
            lower,
            upper,
            floors: Floors::default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_floors(mut self, floors: Floors) -> Self {
        self.floors = floors;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0 && self.a.is_finite()) {
            return Err(Error::invalid("a", format!("gap width {} must be positive", self.a)));
        }
        self.lower.validate()?;
        self.upper.validate()?;
        if self.lower.velocity != 0.0 {
            return Err(Error::invalid(
                "lower.velocity",
                "the lower body defines the laboratory frame",
            ));
        }
        Ok(())
    }

    pub fn interface(&self, side: Side) -> &InterfaceSpec {
        match side {
            Side::Lower => &self.lower,
            Side::Upper => &self.upper,
        }
    }

    pub fn check_in_gap(&self, z: f64) -> Result<()> {
        let half = 0.5 * self.a;
        if !(z >= -half && z <= half) {
            return Err(Error::DomainViolation { z, lo: -half, hi: half });
        }
        Ok(())
    }

    /// All frequency-domain ingredients of the cavity at one spectral point.
    pub fn response(&self, pt: SpectralPoint) -> Result<CavityResponse> {
        let wn = wave_numbers(pt)?;
        check_light_cone(pt, self.floors.light_cone)?;
        let r_minus = self.lower.reflection(pt, &self.floors)?.matrix;
        let r_plus = self.upper.reflection(pt, &self.floors)?.matrix;
        CavityResponse::from_parts(pt, wn.qz, self.a, r_minus, r_plus, self.floors)
    }
}

/// Reflection matrices, free propagator and multiple-reflection inverses
/// of a cavity at a fixed spectral point.
#[derive(Debug, Clone, Copy)]
pub struct CavityResponse {
    pub pt: SpectralPoint,
    pub qz: C64,
    pub a: f64,
    pub r_minus: WeylMatrix,
    pub r_plus: WeylMatrix,
    pub delta0: WeylMatrix,
    /// `Û₊₋⁻¹` with `Û₊₋ = I − R̂₊R̂₋ e^{2iqz a}`.
    pub u_pm_inv: WeylMatrix,
    /// `Û₋₊⁻¹` with `Û₋₊ = I − R̂₋R̂₊ e^{2iqz a}`.
    pub u_mp_inv: WeylMatrix,
    pub floors: Floors,
}

impl CavityResponse {
    pub fn from_parts(
        pt: SpectralPoint,
        qz: C64,
        a: f64,
        r_minus: WeylMatrix,
        r_plus: WeylMatrix,
        floors: Floors,
    ) -> Result<Self> {
        let round_trip = (C64::i() * qz * (2.0 * a)).exp();
        let u_pm = WeylMatrix::IDENTITY - (r_plus * r_minus).scale(round_trip);
        let u_mp = WeylMatrix::IDENTITY - (r_minus * r_plus).scale(round_trip);
        let u_pm_inv = u_pm
            .try_inverse(floors.resonance)
            .ok_or(Error::CavityResonance { det: u_pm.det().norm() })?;
        let u_mp_inv = u_mp
            .try_inverse(floors.resonance)
            .ok_or(Error::CavityResonance { det: u_mp.det().norm() })?;
        Ok(CavityResponse {
            pt,
            qz,
            a,
            r_minus,
            r_plus,
            delta0: delta0_from(pt.omega, qz),
            u_pm_inv,
            u_mp_inv,
            floors,
        })
    }

    pub fn reflection(&self, side: Side) -> WeylMatrix {
        match side {
            Side::Lower => self.r_minus,
            Side::Upper => self.r_plus,
        }
    }

    /// `e^{i qz a}`.
    pub fn gap_phase(&self) -> C64 {
        (C64::i() * self.qz * self.a).exp()
    }

    /// Expansion of `D̂ᴿ(z, z')` in plane waves.
    pub fn retarded(&self) -> ModeExpansion {
        let e1 = self.gap_phase();
        let e2 = e1 * e1;
        let d0 = self.delta0;
        let (rm, rp) = (self.r_minus, self.r_plus);
        let qz = self.qz;
        ModeExpansion {
            free: d0,
            qz,
            terms: [
                ExpTerm::new((self.u_pm_inv * rp * d0).scale(e1), -qz, -qz),
                ExpTerm::new((self.u_pm_inv * rp * rm * d0).scale(e2), -qz, qz),
                ExpTerm::new((self.u_mp_inv * rm * d0).scale(e1), qz, qz),
                ExpTerm::new((self.u_mp_inv * rm * rp * d0).scale(e2), qz, -qz),
            ],
        }
    }

    /// Admittance of one boundary.
    pub fn admittance(&self, side: Side) -> Result<WeylMatrix> {
        admittance_with(&self.reflection(side), self.floors.denominator)
    }

    /// Source strength `Γ̂ν` of one boundary.
    pub fn gamma(&self, side: Side) -> Result<WeylMatrix> {
        Ok(gamma_from(&self.admittance(side)?, self.pt.omega, self.qz))
    }
}

/// `coef · e^{i (kz z + kz' z')}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpTerm {
    pub coef: WeylMatrix,
    pub kz: C64,
    pub kz_prime: C64,
}

impl ExpTerm {
    pub fn new(coef: WeylMatrix, kz: C64, kz_prime: C64) -> Self {
        ExpTerm { coef, kz, kz_prime }
    }

    fn phase(&self, z: f64, z_prime: f64) -> C64 {
        (C64::i() * (self.kz * z + self.kz_prime * z_prime)).exp()
    }
}

/// A field of the form `free · e^{i qz |z − z'|} + Σ coef · e^{i(kz z + kz' z')}`,
/// with exact derivatives in `z` and `z'`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeExpansion {
    pub free: WeylMatrix,
    pub qz: C64,
    pub terms: [ExpTerm; 4],
}

#[derive(Clone, Copy)]
enum Deriv {
    None,
    Z,
    ZPrime,
    Both,
}

impl ModeExpansion {
    pub fn eval(&self, z: f64, z_prime: f64) -> WeylMatrix {
        self.combine(z, z_prime, Deriv::None)
    }

    pub fn d_dz(&self, z: f64, z_prime: f64) -> WeylMatrix {
        self.combine(z, z_prime, Deriv::Z)
    }

    pub fn d_dz_prime(&self, z: f64, z_prime: f64) -> WeylMatrix {
        self.combine(z, z_prime, Deriv::ZPrime)
    }

    /// `∂z ∂z'`, without the contact term at `z = z'`.
    pub fn d2_dz_dz_prime(&self, z: f64, z_prime: f64) -> WeylMatrix {
        self.combine(z, z_prime, Deriv::Both)
    }

    fn combine(&self, z: f64, z_prime: f64, d: Deriv) -> WeylMatrix {
        let i = C64::i();
        let mut out = WeylMatrix::ZERO;
        if self.free != WeylMatrix::ZERO {
            let sep = z - z_prime;
            // at z = z' the one-sided derivatives average to zero
            let s = if sep > 0.0 {
                1.0
            } else if sep < 0.0 {
                -1.0
            } else {
                0.0
            };
            let f = (i * self.qz * sep.abs()).exp();
            let factor = match d {
                Deriv::None => f,
                Deriv::Z => i * self.qz * s * f,
                Deriv::ZPrime => -i * self.qz * s * f,
                Deriv::Both => self.qz * self.qz * f,
            };
            out += self.free.scale(factor);
        }
        for t in &self.terms {
            let p = t.phase(z, z_prime);
            let factor = match d {
                Deriv::None => p,
                Deriv::Z => i * t.kz * p,
                Deriv::ZPrime => i * t.kz_prime * p,
                Deriv::Both => -(t.kz * t.kz_prime) * p,
            };
            out += t.coef.scale(factor);
        }
        out
    }
}

/// Green function of a single interface at `z = −a/2` (lower) or `+a/2`
/// (upper), for points on the vacuum side.
pub fn single_interface_retarded(
    side: Side,
    r: &ReflectionMatrix,
    pt: SpectralPoint,
    z: f64,
    z_prime: f64,
    a: f64,
) -> Result<WeylMatrix> {
    let surface = side.position(a);
    for x in [z, z_prime] {
        let outside = match side {
            Side::Lower => x < surface,
            Side::Upper => x > surface,
        };
        if outside {
            let (lo, hi) = match side {
                Side::Lower => (surface, f64::INFINITY),
                Side::Upper => (f64::NEG_INFINITY, surface),
            };
            return Err(Error::DomainViolation { z: x, lo, hi });
        }
    }
    Ok(single_interface_expansion_at(side, &r.matrix, pt, a)?.eval(z, z_prime))
}

/// `Δ̂ᴿ + R̂ Δ̂₀ e^{±iqz(z + z' ± a)}` as an expansion.
pub(crate) fn single_interface_expansion_at(
    side: Side,
    r: &WeylMatrix,
    pt: SpectralPoint,
    a: f64,
) -> Result<ModeExpansion> {
    let wn = wave_numbers(pt)?;
    check_light_cone(pt, Floors::default().light_cone)?;
    let qz = wn.qz;
    let d0 = delta0_from(pt.omega, qz);
    let e1 = (C64::i() * qz * a).exp();
    let zero = ExpTerm::new(WeylMatrix::ZERO, C64::new(0.0, 0.0), C64::new(0.0, 0.0));
    let image = match side {
        Side::Lower => ExpTerm::new((*r * d0).scale(e1), qz, qz),
        Side::Upper => ExpTerm::new((*r * d0).scale(e1), -qz, -qz),
    };
    Ok(ModeExpansion {
        free: d0,
        qz,
        terms: [image, zero, zero, zero],
    })
}

/// Retarded Green function inside the cavity.
pub fn cavity_retarded(cfg: &CavityConfig, pt: SpectralPoint, z: f64, z_prime: f64) -> Result<WeylMatrix> {
    cfg.check_in_gap(z)?;
    cfg.check_in_gap(z_prime)?;
    Ok(cfg.response(pt)?.retarded().eval(z, z_prime))
}

/// Advanced Green function inside the cavity, `conj D̂ᴿ(z, z')`.
pub fn cavity_advanced(cfg: &CavityConfig, pt: SpectralPoint, z: f64, z_prime: f64) -> Result<WeylMatrix> {
    Ok(cavity_retarded(cfg, pt, z, z_prime)?.conj())
}

/// `D̂ᴬ(z, z') = [D̂ᴿ(z', z)]†`, given the retarded function with swapped
/// arguments.
pub fn advanced_from_retarded(retarded_swapped: &WeylMatrix) -> WeylMatrix {
    retarded_swapped.adjoint()
}

/// Tensor components with one or two indices along the surface normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalComponents {
    /// `D_{zλ}` for λ = s, p.
    pub z_lambda: [C64; 2],
    /// `D_{λz}` for λ = s, p.
    pub lambda_z: [C64; 2],
    /// `D_{zz}` without the contact term.
    pub zz: C64,
}

/// Normal components of a field given as a plane-wave expansion.
pub fn normal_components(field: &ModeExpansion, pt: SpectralPoint, z: f64, z_prime: f64) -> Result<NormalComponents> {
    let wn = wave_numbers(pt)?;
    check_light_cone(pt, Floors::default().light_cone)?;
    let q = wn.q;
    let qz2 = wn.qz * wn.qz;
    let dz = field.d_dz(z, z_prime);
    let dzp = field.d_dz_prime(z, z_prime);
    let dd = field.d2_dz_dz_prime(z, z_prime);
    let left = C64::i() * q / qz2;
    Ok(NormalComponents {
        z_lambda: [left * dz.get(1, 0), left * dz.get(1, 1)],
        lambda_z: [-left * dzp.get(0, 1), -left * dzp.get(1, 1)],
        zz: dd.pp() * (q * q) / (qz2 * qz2),
    })
}

/// Normal components of the cavity retarded Green function.
pub fn normal_components_retarded(
    cfg: &CavityConfig,
    pt: SpectralPoint,
    z: f64,
    z_prime: f64,
) -> Result<NormalComponents> {
    cfg.check_in_gap(z)?;
    cfg.check_in_gap(z_prime)?;
    normal_components(&cfg.response(pt)?.retarded(), pt, z, z_prime)
}

/// Boundary-condition residuals `i qz⁻¹ ∂z D̂ᴿ ∓ Ŷ∓ D̂ᴿ` at `z = ∓a/2`, as
/// (lower, upper).
pub fn boundary_residuals(cfg: &CavityConfig, pt: SpectralPoint, z_prime: f64) -> Result<(WeylMatrix, WeylMatrix)> {
    cfg.check_in_gap(z_prime)?;
    let resp = cfg.response(pt)?;
    let y_minus = resp.admittance(Side::Lower)?;
    let y_plus = resp.admittance(Side::Upper)?;
    Ok(expansion_boundary_residuals(
        &resp.retarded(),
        resp.qz,
        cfg.a,
        z_prime,
        &y_minus,
        &y_plus,
    ))
}

pub(crate) fn expansion_boundary_residuals(
    field: &ModeExpansion,
    qz: C64,
    a: f64,
    z_prime: f64,
    y_minus: &WeylMatrix,
    y_plus: &WeylMatrix,
) -> (WeylMatrix, WeylMatrix) {
    let k = C64::i() / qz;
    let lo = -0.5 * a;
    let hi = 0.5 * a;
    let lower = field.d_dz(lo, z_prime).scale(k) - *y_minus * field.eval(lo, z_prime);
    let upper = field.d_dz(hi, z_prime).scale(k) + *y_plus * field.eval(hi, z_prime);
    (lower, upper)
}

/// Residuals of the half-space Green function against its own boundary
/// and the outgoing-wave condition `Ŷ = I` on the open side.
pub fn single_interface_residuals(
    side: Side,
    r: &ReflectionMatrix,
    pt: SpectralPoint,
    z_prime: f64,
    a: f64,
) -> Result<(WeylMatrix, WeylMatrix)> {
    let field = single_interface_expansion_at(side, &r.matrix, pt, a)?;
    let y = admittance_with(&r.matrix, Floors::default().denominator)?;
    let (y_minus, y_plus) = match side {
        Side::Lower => (y, WeylMatrix::IDENTITY),
        Side::Upper => (WeylMatrix::IDENTITY, y),
    };
    Ok(expansion_boundary_residuals(
        &field, field.qz, a, z_prime, &y_minus, &y_plus,
    ))
}

/// Surface source strength `Γ̂ = −½(Δ̂₀⁻¹Ŷ − h.c.)`.
pub fn gamma_surface(y: &WeylMatrix, pt: SpectralPoint) -> Result<WeylMatrix> {
    let wn = wave_numbers(pt)?;
    check_light_cone(pt, Floors::default().light_cone)?;
    Ok(gamma_from(y, pt.omega, wn.qz))
}

pub(crate) fn gamma_from(y: &WeylMatrix, omega: f64, qz: C64) -> WeylMatrix {
    let m = delta0_inverse_from(omega, qz) * *y;
    (m - m.adjoint()).scale_re(-0.5)
}

/// Outcome of checking `Σν D̂ᴿ(z, νa/2) Γ̂ν D̂ᴬ(νa/2, z') = D̂ᴿ − D̂ᴬ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityCheck {
    /// Norm of the difference of both sides.
    pub residual: f64,
    /// Magnitude of the terms entering the balance.
    pub scale: f64,
}

impl IdentityCheck {
    pub fn relative(&self) -> f64 {
        if self.scale > 0.0 {
            self.residual / self.scale
        } else {
            self.residual
        }
    }
}

pub fn verify_surface_identity(cfg: &CavityConfig, pt: SpectralPoint, z: f64, z_prime: f64) -> Result<IdentityCheck> {
    cfg.check_in_gap(z)?;
    cfg.check_in_gap(z_prime)?;
    let resp = cfg.response(pt)?;
    let dr = resp.retarded();
    let mut lhs = WeylMatrix::ZERO;
    let mut scale = 0.0;
    for side in Side::BOTH {
        let x = side.position(cfg.a);
        let gamma = resp.gamma(side)?;
        let left = dr.eval(z, x);
        let right = dr.eval(x, z_prime).conj();
        lhs += left * gamma * right;
        scale += left.norm() * gamma.norm() * right.norm();
    }
    let d = dr.eval(z, z_prime);
    let rhs = d - d.conj();
    scale += d.norm();
    Ok(IdentityCheck {
        residual: (lhs - rhs).norm(),
        scale,
    })
}
