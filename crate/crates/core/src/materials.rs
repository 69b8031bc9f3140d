//! Boundary models: reflection matrices in the rest frame of a body, their
//! Lorentz-boosted form for a sliding body, and surface admittances.
//!
//! Sign conventions follow the impedance formulas used throughout this crate:
//! at normal incidence both polarizations share the same reflection
//! amplitude, so `R^p` carries the opposite sign of the textbook Fresnel
//! `r_p`.

use crate::error::{Error, Result};
use crate::spectral::{g_from, wave_numbers, Floors, SpectralPoint};
use crate::weyl::WeylMatrix;
use crate::C64;

/// Drude model of a metal, reduced to a surface impedance
/// `ζ(ω) = 1/√ε(ω)` with `ε(ω) = 1 − ωp² / (ω (ω + i/τ))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrudeImpedance {
    pub plasma_frequency: f64,
    pub relaxation_time: f64,
}

impl DrudeImpedance {
    pub fn new(plasma_frequency: f64, relaxation_time: f64) -> Result<Self> {
        if !(plasma_frequency > 0.0 && plasma_frequency.is_finite()) {
            return Err(Error::invalid("plasma_frequency", "must be positive"));
        }
        if !(relaxation_time > 0.0 && relaxation_time.is_finite()) {
            return Err(Error::invalid("relaxation_time", "must be positive"));
        }
        Ok(DrudeImpedance {
            plasma_frequency,
            relaxation_time,
        })
    }

    /// Solve for the plasma frequency that gives a field decay length
    /// `skin_depth` at frequency `omega_ref` and normal incidence.
    ///
    /// All arguments are in natural units.
    pub fn from_skin_depth(skin_depth: f64, relaxation_time: f64, omega_ref: f64) -> Result<Self> {
        if !(skin_depth > 0.0) {
            return Err(Error::invalid("skin_depth", "must be positive"));
        }
        if !(omega_ref > 0.0) {
            return Err(Error::invalid("omega_ref", "must be positive"));
        }
        if !(relaxation_time > 0.0) {
            return Err(Error::invalid("relaxation_time", "must be positive"));
        }
        let decay = |wp: f64| {
            let m = DrudeImpedance {
                plasma_frequency: wp,
                relaxation_time,
            };
            1.0 / (omega_ref * m.permittivity(omega_ref).sqrt().im)
        };
        // decay length falls monotonically with the plasma frequency
        let mut lo = 1e-9 * omega_ref;
        let mut hi = omega_ref;
        while decay(hi) > skin_depth {
            lo = hi;
            hi *= 2.0;
            if hi > 1e12 * omega_ref {
                return Err(Error::invalid("skin_depth", "too small to calibrate"));
            }
        }
        if decay(lo) < skin_depth {
            return Err(Error::invalid("skin_depth", "too large to calibrate"));
        }
        while (hi - lo) > 1e-10 * hi {
            let mid = 0.5 * (lo + hi);
            if decay(mid) > skin_depth {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        DrudeImpedance::new(0.5 * (lo + hi), relaxation_time)
    }

    pub fn permittivity(&self, omega: f64) -> C64 {
        let wp2 = self.plasma_frequency * self.plasma_frequency;
        C64::new(1.0, 0.0) - wp2 / (omega * C64::new(omega, 1.0 / self.relaxation_time))
    }

    pub fn impedance(&self, omega: f64) -> C64 {
        self.permittivity(omega).sqrt().inv()
    }
}

/// Material of a half-space body, described in its rest frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Material {
    /// Constant real index `n ≥ 1` with an optional small loss `delta ≥ 0`,
    /// `ε(ω) = n² + i·delta·sgn ω`.
    Dielectric {
        n: f64,
        delta: f64,
    },
    Metal(DrudeImpedance),
    /// Perfect conductor, `R = −I`.
    PerfectMirror,
}

impl Material {
    pub fn dielectric(n: f64) -> Material {
        Material::Dielectric { n, delta: 0.0 }
    }

    /// No body at all: a dielectric with unit index reflects nothing.
    pub fn vacuum() -> Material {
        Material::dielectric(1.0)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Material::Dielectric { n, delta } => {
                if !(n >= 1.0 && n.is_finite()) {
                    return Err(Error::invalid("n", format!("{n} must be ≥ 1")));
                }
                if !(delta >= 0.0 && delta.is_finite()) {
                    return Err(Error::invalid("delta", format!("{delta} must be ≥ 0")));
                }
                Ok(())
            }
            Material::Metal(m) => DrudeImpedance::new(m.plasma_frequency, m.relaxation_time).map(|_| ()),
            Material::PerfectMirror => Ok(()),
        }
    }

    /// Reflection matrix for a body at rest in the evaluating frame.
    pub fn rest_reflection(&self, pt: SpectralPoint) -> Result<ReflectionMatrix> {
        self.rest_reflection_with(pt, &Floors::default())
    }

    pub fn rest_reflection_with(&self, pt: SpectralPoint, floors: &Floors) -> Result<ReflectionMatrix> {
        match *self {
            Material::Dielectric { n, delta } => dielectric_reflection_with(n, delta, pt, floors),
            Material::Metal(m) => metal_reflection_with(&m, pt, floors),
            Material::PerfectMirror => {
                wave_numbers(pt)?;
                Ok(ReflectionMatrix {
                    matrix: -WeylMatrix::IDENTITY,
                    pt,
                })
            }
        }
    }

    /// Reflection matrix seen from the laboratory frame for a body moving
    /// with velocity `v` along x.
    pub fn lab_reflection(&self, pt: SpectralPoint, v: f64, floors: &Floors) -> Result<ReflectionMatrix> {
        if v == 0.0 {
            return self.rest_reflection_with(pt, floors);
        }
        let rest_pt = lorentz_spectral(pt, v)?;
        let rest = self.rest_reflection_with(rest_pt, floors)?;
        boosted_reflection(&rest, pt, v)
    }
}

/// A reflection matrix together with the point where it was evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionMatrix {
    pub matrix: WeylMatrix,
    pub pt: SpectralPoint,
}

impl ReflectionMatrix {
    pub fn zero(pt: SpectralPoint) -> Self {
        ReflectionMatrix {
            matrix: WeylMatrix::ZERO,
            pt,
        }
    }

    /// `‖ĝ Rᵀ − R ĝ‖`.
    pub fn metric_symmetry_residual(&self) -> Result<f64> {
        let wn = wave_numbers(self.pt)?;
        let g = g_from(self.pt.omega, wn.qz);
        Ok((g * self.matrix.transpose() - self.matrix * g).max_abs())
    }
}

fn dielectric_permittivity(n: f64, delta: f64, omega: f64) -> C64 {
    C64::new(n * n, delta * omega.signum())
}

/// `q_zε = √(ε ω² − q²)` with `Im q_zε ≥ 0`; a real positive radicand takes
/// the sign of ω, as in vacuum.
pub fn medium_wave_number(eps: C64, pt: SpectralPoint) -> C64 {
    let radicand = eps * (pt.omega * pt.omega) - pt.q_sqr();
    if radicand.im == 0.0 {
        if radicand.re > 0.0 {
            C64::new(pt.omega.signum() * radicand.re.sqrt(), 0.0)
        } else {
            C64::new(0.0, (-radicand.re).sqrt())
        }
    } else {
        let root = radicand.sqrt();
        if root.im < 0.0 {
            -root
        } else {
            root
        }
    }
}

pub fn dielectric_reflection(n: f64, delta: f64, pt: SpectralPoint) -> Result<ReflectionMatrix> {
    dielectric_reflection_with(n, delta, pt, &Floors::default())
}

fn dielectric_reflection_with(n: f64, delta: f64, pt: SpectralPoint, floors: &Floors) -> Result<ReflectionMatrix> {
    let wn = wave_numbers(pt)?;
    let qz = wn.qz;
    let eps = dielectric_permittivity(n, delta, pt.omega);
    let qze = medium_wave_number(eps, pt);
    let den_s = qz + qze;
    let den_p = qze + eps * qz;
    if den_s.norm() <= floors.denominator {
        return Err(Error::DegenerateDenominator { what: "qz + qzε" });
    }
    if den_p.norm() <= floors.denominator {
        return Err(Error::DegenerateDenominator { what: "qzε + ε qz" });
    }
    let rs = (qz - qze) / den_s;
    let rp = (qze - eps * qz) / den_p;
    Ok(ReflectionMatrix {
        matrix: WeylMatrix::diag(rs, rp),
        pt,
    })
}

pub fn metal_reflection(metal: &DrudeImpedance, pt: SpectralPoint) -> Result<ReflectionMatrix> {
    metal_reflection_with(metal, pt, &Floors::default())
}

fn metal_reflection_with(metal: &DrudeImpedance, pt: SpectralPoint, floors: &Floors) -> Result<ReflectionMatrix> {
    let wn = wave_numbers(pt)?;
    let zeta = metal.impedance(pt.omega);
    impedance_reflection(zeta, pt.omega, wn.qz, floors).map(|matrix| ReflectionMatrix { matrix, pt })
}

/// Reflection from a surface impedance `ζ`.
pub(crate) fn impedance_reflection(zeta: C64, omega: f64, qz: C64, floors: &Floors) -> Result<WeylMatrix> {
    let w = C64::new(omega, 0.0);
    let den_s = qz * zeta + w;
    let den_p = w * zeta + qz;
    if den_s.norm() <= floors.denominator {
        return Err(Error::DegenerateDenominator { what: "qz ζ + ω" });
    }
    if den_p.norm() <= floors.denominator {
        return Err(Error::DegenerateDenominator { what: "ω ζ + qz" });
    }
    Ok(WeylMatrix::diag((qz * zeta - w) / den_s, (w * zeta - qz) / den_p))
}

fn lorentz_factor(v: f64) -> Result<f64> {
    if !(v.abs() < 1.0) {
        return Err(Error::Superluminal(v));
    }
    Ok(1.0 / (1.0 - v * v).sqrt())
}

/// Spectral point in the frame moving with velocity `v` along x:
/// `ω' = γ(ω − v qx)`, `qx' = γ(qx − v ω)`.
pub fn lorentz_spectral(pt: SpectralPoint, v: f64) -> Result<SpectralPoint> {
    let gamma = lorentz_factor(v)?;
    Ok(SpectralPoint::new(
        gamma * (pt.omega - v * pt.qx),
        gamma * (pt.qx - v * pt.omega),
        pt.qy,
    ))
}

/// Matrix that carries Weyl components of surface currents from the
/// co-moving frame to the laboratory frame.
pub fn boost_mixing_matrix(pt: SpectralPoint, v: f64) -> Result<WeylMatrix> {
    let gamma = lorentz_factor(v)?;
    let rest = lorentz_spectral(pt, v)?;
    let q = pt.q();
    let q_prime = rest.q();
    if q == 0.0 || q_prime == 0.0 {
        return Err(Error::DegeneratePoint { q, q_prime });
    }
    if rest.omega == 0.0 {
        return Err(Error::ZeroFrequency);
    }
    let (w, wp) = (pt.omega, rest.omega);
    let qz2 = w * w - pt.q_sqr();
    let eta = pt.q_sqr() - v * w * pt.qx;
    let pref = gamma / (q * q_prime * wp);
    Ok(WeylMatrix::new(
        C64::new(pref * eta * wp, 0.0),
        C64::new(-pref * v * pt.qy * qz2, 0.0),
        C64::new(pref * v * pt.qy * w * wp, 0.0),
        C64::new(pref * eta * w, 0.0),
    ))
}

/// Reflection matrix of a body sliding with velocity `v`, from its
/// diagonal rest-frame matrix evaluated at `lorentz_spectral(pt, v)`.
pub fn boosted_reflection(rest: &ReflectionMatrix, pt: SpectralPoint, v: f64) -> Result<ReflectionMatrix> {
    let gamma = lorentz_factor(v)?;
    if !rest.matrix.is_diagonal() {
        return Err(Error::invalid("rest_R", "rest-frame reflection must be diagonal"));
    }
    let wn = wave_numbers(pt)?;
    let (rs, rp) = (rest.matrix.ss(), rest.matrix.pp());
    let q = pt.q();
    let q_prime = rest.pt.q();
    if pt.qy == 0.0 {
        return Ok(ReflectionMatrix {
            matrix: WeylMatrix::diag(rs, rp),
            pt,
        });
    }
    if q == 0.0 || q_prime == 0.0 {
        return Err(Error::DegeneratePoint { q, q_prime });
    }
    let qz = wn.qz;
    let sin = qz * (v * gamma * pt.qy / (q * q_prime));
    let sin2 = sin * sin;
    let cos2 = C64::new(1.0, 0.0) - sin2;
    let cos = cos2.sqrt();
    let ss = rs * cos2 + rp * sin2;
    let pp = rp * cos2 + rs * sin2;
    // (ω/qz)·sinθ is finite even where qz → 0
    let omega_sin_over_qz = C64::new(pt.omega * v * gamma * pt.qy / (q * q_prime), 0.0);
    let sp = omega_sin_over_qz * (rs - rp) * cos;
    let ps = sp * (qz * qz / (pt.omega * pt.omega));
    Ok(ReflectionMatrix {
        matrix: WeylMatrix::new(ss, sp, ps, pp),
        pt,
    })
}

/// Generalized surface admittance `Ŷ = (I + R)⁻¹ (I − R)`.
pub fn admittance(r: &ReflectionMatrix) -> Result<WeylMatrix> {
    admittance_with(&r.matrix, Floors::default().denominator)
}

pub(crate) fn admittance_with(r: &WeylMatrix, floor: f64) -> Result<WeylMatrix> {
    let plus = WeylMatrix::IDENTITY + *r;
    let inv = plus
        .try_inverse(floor)
        .ok_or(Error::SingularAdmittance { det: plus.det().norm() })?;
    Ok(inv * (WeylMatrix::IDENTITY - *r))
}
