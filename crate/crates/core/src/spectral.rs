//! Spectral coordinate, vacuum normal wave number and the free-space
//! Green function in the Weyl basis.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::weyl::WeylMatrix;
use crate::C64;

/// Numerical floors that guard divisions and degenerate limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Floors {
    /// Points with `|ω² − q²|` at or below this are treated as lying on the
    /// light cone.
    pub light_cone: f64,
    /// Minimum modulus accepted for reflection denominators and `det(I + R)`.
    pub denominator: f64,
    /// Minimum `|det U|` for the multiple-reflection matrix.
    pub resonance: f64,
    /// Below this value of `|ε a|` the z-integral of `e^{εz}` uses its limit `a`.
    pub z_integral: f64,
}

impl Default for Floors {
    fn default() -> Self {
        Floors {
            light_cone: 1e-12,
            denominator: 1e-14,
            resonance: 1e-10,
            z_integral: 1e-8,
        }
    }
}

/// The spectral coordinate `Ω = (ω, qx, qy)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub omega: f64,
    pub qx: f64,
    pub qy: f64,
}

impl SpectralPoint {
    pub fn new(omega: f64, qx: f64, qy: f64) -> Self {
        SpectralPoint { omega, qx, qy }
    }

    /// A point with the tangential wave vector along x.
    pub fn radial(omega: f64, q: f64) -> Self {
        SpectralPoint::new(omega, q, 0.0)
    }

    /// Tangential magnitude `|q|`.
    pub fn q(&self) -> f64 {
        self.qx.hypot(self.qy)
    }

    pub fn q_sqr(&self) -> f64 {
        self.qx * self.qx + self.qy * self.qy
    }

    /// `−Ω`.
    pub fn negated(&self) -> SpectralPoint {
        SpectralPoint::new(-self.omega, -self.qx, -self.qy)
    }

    pub fn wave_numbers(&self) -> Result<WaveNumbers> {
        wave_numbers(*self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    /// `ω² > q²`: real `qz`.
    Propagating,
    /// `q² ≥ ω²`: `qz` on the positive imaginary axis.
    Evanescent,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveNumbers {
    pub q: f64,
    pub qz: C64,
    pub sector: Sector,
}

impl WaveNumbers {
    pub fn is_propagating(&self) -> bool {
        self.sector == Sector::Propagating
    }

    /// Decay constant `Im qz` (zero for propagating waves).
    pub fn kappa(&self) -> f64 {
        self.qz.im
    }
}

/// Normal wave number in vacuum, continued over the whole frequency axis:
/// `sgn(ω)·√(ω² − q²)` for propagating waves and `i√(q² − ω²)` otherwise.
pub fn wave_numbers(pt: SpectralPoint) -> Result<WaveNumbers> {
    if pt.omega == 0.0 {
        return Err(Error::ZeroFrequency);
    }
    let q = pt.q();
    let radicand = pt.omega * pt.omega - pt.q_sqr();
    let (qz, sector) = if radicand > 0.0 {
        (C64::new(pt.omega.signum() * radicand.sqrt(), 0.0), Sector::Propagating)
    } else {
        (C64::new(0.0, (-radicand).sqrt()), Sector::Evanescent)
    };
    Ok(WaveNumbers { q, qz, sector })
}

/// Metric `ĝ = diag(1, qz²/ω²)`.
pub fn g_matrix(pt: SpectralPoint) -> Result<WeylMatrix> {
    let wn = wave_numbers(pt)?;
    Ok(g_from(pt.omega, wn.qz))
}

pub(crate) fn g_from(omega: f64, qz: C64) -> WeylMatrix {
    WeylMatrix::diag(C64::new(1.0, 0.0), qz * qz / (omega * omega))
}

/// `Δ̂₀ = (2π / i qz) ĝ`.
pub fn delta0(pt: SpectralPoint) -> Result<WeylMatrix> {
    delta0_with_floor(pt, Floors::default().light_cone)
}

pub fn delta0_with_floor(pt: SpectralPoint, cone_floor: f64) -> Result<WeylMatrix> {
    let wn = wave_numbers(pt)?;
    check_light_cone(pt, cone_floor)?;
    Ok(delta0_from(pt.omega, wn.qz))
}

pub(crate) fn check_light_cone(pt: SpectralPoint, cone_floor: f64) -> Result<()> {
    let gap = (pt.omega * pt.omega - pt.q_sqr()).abs();
    if gap <= cone_floor {
        return Err(Error::LightConeSingularity { gap });
    }
    Ok(())
}

pub(crate) fn delta0_from(omega: f64, qz: C64) -> WeylMatrix {
    let pref = C64::new(2.0 * PI, 0.0) / (C64::i() * qz);
    g_from(omega, qz).scale(pref)
}

/// Inverse of `Δ̂₀`: `(i qz / 2π) ĝ⁻¹`.
pub(crate) fn delta0_inverse_from(omega: f64, qz: C64) -> WeylMatrix {
    let pref = C64::i() * qz / (2.0 * PI);
    WeylMatrix::diag(pref, pref * (omega * omega) / (qz * qz))
}

/// Free retarded Green function `Δ̂₀ e^{i qz |z − z'|}`.
pub fn free_retarded(pt: SpectralPoint, z: f64, z_prime: f64) -> Result<WeylMatrix> {
    let wn = wave_numbers(pt)?;
    let d0 = delta0(pt)?;
    Ok(d0.scale((C64::i() * wn.qz * (z - z_prime).abs()).exp()))
}

/// Free advanced Green function, the element-wise conjugate of the retarded one.
pub fn free_advanced(pt: SpectralPoint, z: f64, z_prime: f64) -> Result<WeylMatrix> {
    Ok(free_retarded(pt, z, z_prime)?.conj())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn propagating_branch() {
        let wn = wave_numbers(SpectralPoint::radial(5.0, 3.0)).unwrap();
        assert_eq!(wn.sector, Sector::Propagating);
        assert_eq!(wn.qz, C64::new(4.0, 0.0));
    }

    #[test]
    fn evanescent_branch() {
        let wn = wave_numbers(SpectralPoint::radial(3.0, 5.0)).unwrap();
        assert_eq!(wn.sector, Sector::Evanescent);
        assert_eq!(wn.qz, C64::new(0.0, 4.0));
    }

    #[test]
    fn negative_frequency_follows_sign() {
        let wn = wave_numbers(SpectralPoint::radial(-5.0, 3.0)).unwrap();
        assert_eq!(wn.qz, C64::new(-4.0, 0.0));
    }

    #[test]
    fn zero_frequency_rejected() {
        assert_eq!(wave_numbers(SpectralPoint::radial(0.0, 1.0)), Err(Error::ZeroFrequency));
        assert!(g_matrix(SpectralPoint::radial(0.0, 1.0)).is_err());
    }

    #[test]
    fn metric_examples() {
        let g = g_matrix(SpectralPoint::radial(5.0, 3.0)).unwrap();
        assert!(close(g.pp(), C64::new(16.0 / 25.0, 0.0), 1e-15));
        let g = g_matrix(SpectralPoint::radial(3.0, 5.0)).unwrap();
        assert!(close(g.pp(), C64::new(-16.0 / 9.0, 0.0), 1e-15));
        let g = g_matrix(SpectralPoint::radial(1.0, 0.0)).unwrap();
        assert_eq!(g, WeylMatrix::IDENTITY);
    }

    #[test]
    fn delta0_examples() {
        let d = delta0(SpectralPoint::radial(5.0, 3.0)).unwrap();
        assert!(close(d.ss(), C64::new(0.0, -PI / 2.0), 1e-15));
        assert!((d.adjoint() + d).max_abs() < 1e-15);

        let d = delta0(SpectralPoint::radial(3.0, 5.0)).unwrap();
        assert!(close(d.ss(), C64::new(-PI / 2.0, 0.0), 1e-15));
        assert!((d.adjoint() - d).max_abs() < 1e-15);
    }

    #[test]
    fn delta0_rejects_light_cone() {
        assert!(matches!(
            delta0(SpectralPoint::radial(2.0, 2.0)),
            Err(Error::LightConeSingularity { .. })
        ));
    }

    #[test]
    fn delta0_inverse_is_inverse() {
        let pt = SpectralPoint::new(1.3, 0.4, -2.2);
        let wn = wave_numbers(pt).unwrap();
        let prod = delta0_from(pt.omega, wn.qz) * delta0_inverse_from(pt.omega, wn.qz);
        assert!((prod - WeylMatrix::IDENTITY).max_abs() < 1e-14);
    }

    #[test]
    fn free_retarded_examples() {
        let pt = SpectralPoint::radial(5.0, 3.0);
        assert_eq!(free_retarded(pt, 0.3, 0.3).unwrap(), delta0(pt).unwrap());

        let pt = SpectralPoint::radial(3.0, 5.0);
        let d = free_retarded(pt, 0.0, 1.0).unwrap();
        let expect = delta0(pt).unwrap().scale_re((-4.0f64).exp());
        assert!((d - expect).max_abs() < 1e-15);

        let pt = SpectralPoint::new(2.0, 0.7, 1.1);
        let lhs = free_retarded(pt.negated(), 0.2, -0.4).unwrap();
        let rhs = free_retarded(pt, 0.2, -0.4).unwrap().conj();
        assert!((lhs - rhs).max_abs() < 1e-14);
    }
}
