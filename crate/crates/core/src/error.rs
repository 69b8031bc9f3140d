use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("angular frequency must be nonzero")]
    ZeroFrequency,

    #[error("point lies on the light cone (|ω² − q²| = {gap:e})")]
    LightConeSingularity { gap: f64 },

    #[error("reflection denominator vanishes ({what})")]
    DegenerateDenominator { what: &'static str },

    #[error("boost mixing undefined at normal incidence (q = {q:e}, q' = {q_prime:e})")]
    DegeneratePoint { q: f64, q_prime: f64 },

    #[error("admittance undefined: I + R is singular (|det| = {det:e})")]
    SingularAdmittance { det: f64 },

    #[error("position z = {z} outside the allowed range [{lo}, {hi}]")]
    DomainViolation { z: f64, lo: f64, hi: f64 },

    #[error("cavity resonance: |det U| = {det:e} below floor")]
    CavityResonance { det: f64 },

    #[error("velocity {0} is not subluminal")]
    Superluminal(f64),

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("degenerate polariton cone (n·v = 1)")]
    DegenerateConic,

    #[error("quadrature did not reach tolerance {tol:e} (estimate {estimate:e})")]
    ToleranceNotMet { tol: f64, estimate: f64 },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
