//! SI ↔ natural-unit conversions.
//!
//! Natural units set `c = ħ = k_B = 1` and measure temperatures in units
//! of a reference temperature `T_ref`. Lengths are then measured in the
//! thermal wavelength `λ_T = ħc/(k_B T_ref)`.

use crate::error::{Error, Result};

pub const HBAR: f64 = 1.054_571_817e-34;
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// `ħc/k_B` in metre-kelvin.
pub fn hbar_c_over_kb() -> f64 {
    HBAR * SPEED_OF_LIGHT / BOLTZMANN
}

/// Thermal wavelength `ħc/(k_B T)` in metres.
pub fn thermal_wavelength(temperature_k: f64) -> Result<f64> {
    if !(temperature_k > 0.0) || !temperature_k.is_finite() {
        return Err(Error::invalid("temperature_k", "must be positive and finite"));
    }
    Ok(hbar_c_over_kb() / temperature_k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SiUnit {
    Kelvin,
    Metre,
    Micrometre,
    Nanometre,
}

impl SiUnit {
    fn metres(self) -> Option<f64> {
        match self {
            SiUnit::Kelvin => None,
            SiUnit::Metre => Some(1.0),
            SiUnit::Micrometre => Some(1e-6),
            SiUnit::Nanometre => Some(1e-9),
        }
    }
}

/// A natural-unit system anchored at a reference temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    pub reference_temperature_k: f64,
    /// `λ_T` at the reference temperature, in metres.
    pub length_unit_m: f64,
}

impl UnitSystem {
    pub fn new(reference_temperature_k: f64) -> Result<Self> {
        Ok(UnitSystem {
            reference_temperature_k,
            length_unit_m: thermal_wavelength(reference_temperature_k)?,
        })
    }

    pub fn to_natural(&self, value: f64, unit: SiUnit) -> f64 {
        match unit.metres() {
            None => value / self.reference_temperature_k,
            Some(m) => value * m / self.length_unit_m,
        }
    }

    pub fn from_natural(&self, value: f64, unit: SiUnit) -> f64 {
        match unit.metres() {
            None => value * self.reference_temperature_k,
            Some(m) => value * self.length_unit_m / m,
        }
    }
}

/// Converts a positive SI quantity to natural units with the given
/// reference temperature.
pub fn convert_units(value: f64, unit: SiUnit, reference_temperature_k: f64) -> Result<f64> {
    Ok(UnitSystem::new(reference_temperature_k)?.to_natural(value, unit))
}
