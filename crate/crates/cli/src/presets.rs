//! Built-in scenarios.

use crate::config::{
    AxisSpec, BodySection, CavitySection, ConfigFile, GridKind, GridSection, MaterialKind, OptionsSection, UnitsSection,
};
use crate::error::{CliError, Result};

pub const PRESETS: [&str; 2] = ["fig1_sliding", "fig2_hot_cold"];

/// Velocities of the two sliding-dielectric scans, below and above the
/// Cherenkov threshold `1/n`.
pub const FIG1_VELOCITIES: [f64; 2] = [0.5, 0.9];
pub const FIG1_INDEX: f64 = 1.3;
pub const FIG1_GAP: f64 = 0.4;
pub const FIG2_GAP: f64 = 1.1;
pub const GRID_POINTS: usize = 200;

pub fn preset(name: &str) -> Result<Vec<ConfigFile>> {
    match name {
        "fig1_sliding" => Ok(FIG1_VELOCITIES.iter().map(|&v| sliding_dielectrics(v)).collect()),
        "fig2_hot_cold" => Ok(vec![hot_dielectric_cold_metal()]),
        other => Err(CliError::UnknownPreset(other.to_string())),
    }
}

fn dielectric(n: f64) -> BodySection {
    BodySection {
        n: Some(n),
        delta: Some(0.0),
        ..BodySection::new(MaterialKind::Dielectric)
    }
}

/// Two identical lossless dielectrics at zero temperature, the upper one
/// sliding along x. Fixed frequency `ω = 1`, so `a = 0.4/ω`.
pub fn sliding_dielectrics(v: f64) -> ConfigFile {
    let mut upper = dielectric(FIG1_INDEX);
    upper.temperature = Some(0.0);
    upper.velocity = Some(v);
    let mut lower = dielectric(FIG1_INDEX);
    lower.temperature = Some(0.0);
    ConfigFile {
        name: Some(format!("fig1_sliding_v{v}")),
        units: UnitsSection::default(),
        cavity: CavitySection {
            a: Some(FIG1_GAP),
            a_um: None,
            lower,
            upper,
        },
        grid: GridSection {
            kind: GridKind::Cartesian,
            omega: AxisSpec::Values(vec![1.0]),
            qx: Some(AxisSpec::Range {
                min: -4.0,
                max: 8.0,
                count: GRID_POINTS,
            }),
            qy: Some(AxisSpec::Range {
                min: -6.0,
                max: 6.0,
                count: GRID_POINTS,
            }),
            q: None,
        },
        options: OptionsSection::default(),
    }
}

/// Dielectric at 390 K facing a Drude metal at 210 K, gap `1.1 λ_T` with
/// `λ_T` the thermal wavelength at 300 K.
pub fn hot_dielectric_cold_metal() -> ConfigFile {
    let mut lower = dielectric(1.3);
    lower.temperature_k = Some(390.0);
    let upper = BodySection {
        tau: Some(1.1),
        skin_depth_nm: Some(31.0),
        temperature_k: Some(210.0),
        ..BodySection::new(MaterialKind::Metal)
    };
    ConfigFile {
        name: Some("fig2_hot_cold".into()),
        units: UnitsSection {
            reference_temperature_k: Some(300.0),
        },
        cavity: CavitySection {
            a: Some(FIG2_GAP),
            a_um: None,
            lower,
            upper,
        },
        grid: GridSection {
            kind: GridKind::Cylindrical,
            omega: AxisSpec::Range {
                min: 0.0,
                max: 10.0,
                count: GRID_POINTS,
            },
            qx: None,
            qy: None,
            q: Some(AxisSpec::Range {
                min: 0.0,
                max: 10.0,
                count: GRID_POINTS,
            }),
        },
        options: OptionsSection::default(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Grid;
    use casimir_keldysh::Material;

    #[test]
    fn presets_resolve() {
        for name in PRESETS {
            for cfg in preset(name).unwrap() {
                let s = cfg.resolve(name).unwrap();
                assert_eq!(s.grid.len(), GRID_POINTS * GRID_POINTS);
                assert_eq!(ConfigFile::from_toml(&cfg.to_toml()).unwrap(), cfg);
            }
        }
        assert!(matches!(preset("fig3"), Err(CliError::UnknownPreset(_))));
    }

    #[test]
    fn hot_cold_parameters() {
        let s = hot_dielectric_cold_metal().resolve("x").unwrap();
        assert!((s.cavity.lower.temperature - 1.3).abs() < 1e-14);
        assert!((s.cavity.upper.temperature - 0.7).abs() < 1e-14);
        let Material::Metal(m) = s.cavity.upper.material else {
            panic!("upper body must be a metal")
        };
        // decay length of the field in the metal at ω = T_ref
        let eps = m.permittivity(1.0);
        let depth = 1.0 / eps.sqrt().im;
        let lambda_m = s.units.unwrap().length_unit_m;
        assert!((depth * lambda_m * 1e9 - 31.0).abs() < 1e-6);
        assert!(matches!(s.grid, Grid::Cylindrical { .. }));
    }
}
