//! Scenario files.
//!
//! A scenario is a TOML document with the sections `[units]`, `[cavity]`,
//! `[cavity.lower]`, `[cavity.upper]`, `[grid]` and `[options]`. Every
//! quantity is in natural units (`c = ħ = k_B = 1`, temperatures relative
//! to the reference temperature) unless the key carries an SI suffix
//! (`_K`, `_um`, `_nm`), which needs `units.reference_temperature_K`.

use std::path::Path;

use casimir_keldysh::units::{SiUnit, UnitSystem};
use casimir_keldysh::{CavityConfig, DrudeImpedance, InterfaceSpec, Material};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default)]
    pub units: UnitsSection,
    pub cavity: CavitySection,
    pub grid: GridSection,
    #[serde(default)]
    pub options: OptionsSection,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitsSection {
    #[serde(rename = "reference_temperature_K", default, skip_serializing_if = "Option::is_none")]
    pub reference_temperature_k: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CavitySection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_um: Option<f64>,
    pub lower: BodySection,
    pub upper: BodySection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MaterialKind {
    Dielectric,
    Metal,
    Mirror,
    Vacuum,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BodySection {
    pub kind: MaterialKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plasma_frequency: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skin_depth_nm: Option<f64>,
    /// Frequency (as a temperature) at which `skin_depth_nm` applies.
    #[serde(rename = "reference_temperature_K", default, skip_serializing_if = "Option::is_none")]
    pub reference_temperature_k: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub temperature: Option<f64>,
    #[serde(rename = "temperature_K", default, skip_serializing_if = "Option::is_none")]
    pub temperature_k: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub velocity: Option<f64>,
}

impl BodySection {
    pub fn new(kind: MaterialKind) -> Self {
        BodySection {
            kind,
            n: None,
            delta: None,
            plasma_frequency: None,
            tau: None,
            skin_depth_nm: None,
            reference_temperature_k: None,
            temperature: None,
            temperature_k: None,
            velocity: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridKind {
    /// `ω` list × `qx` × `qy`.
    Cartesian,
    /// `ω` × `|q|`.
    Cylindrical,
}

/// Either explicit values or `count` cell-centred samples of `[min, max]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AxisSpec {
    Values(Vec<f64>),
    Range { min: f64, max: f64, count: usize },
}

impl AxisSpec {
    pub fn values(&self) -> Vec<f64> {
        match self {
            AxisSpec::Values(v) => v.clone(),
            AxisSpec::Range { min, max, count } => {
                let h = (max - min) / *count as f64;
                (0..*count).map(|i| min + (i as f64 + 0.5) * h).collect()
            }
        }
    }

    fn validate(&self, path: &str) -> Result<()> {
        match self {
            AxisSpec::Values(v) => {
                if let Some(x) = v.iter().find(|x| !x.is_finite()) {
                    return Err(CliError::config(path, format!("non-finite value {x}")));
                }
            }
            AxisSpec::Range { min, max, .. } => {
                if !(min.is_finite() && max.is_finite() && min <= max) {
                    return Err(CliError::config(path, format!("invalid range [{min}, {max}]")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub kind: GridKind,
    pub omega: AxisSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qx: Option<AxisSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qy: Option<AxisSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<AxisSpec>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsSection {
    #[serde(default)]
    pub subtract_vacuum: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub environment_temperature: Option<f64>,
    #[serde(
        rename = "environment_temperature_K",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub environment_temperature_k: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    Cartesian {
        omega: Vec<f64>,
        qx: Vec<f64>,
        qy: Vec<f64>,
    },
    Cylindrical {
        omega: Vec<f64>,
        q: Vec<f64>,
    },
}

impl Grid {
    pub fn len(&self) -> usize {
        match self {
            Grid::Cartesian { omega, qx, qy } => omega.len() * qx.len() * qy.len(),
            Grid::Cylindrical { omega, q } => omega.len() * q.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn header(&self) -> &'static str {
        match self {
            Grid::Cartesian { .. } => "omega,qx,qy,U,flags",
            Grid::Cylindrical { .. } => "omega,q,U,flags",
        }
    }

    /// `(ω, qx, qy)` in output order: ω slowest, then qx (or q), then qy.
    /// Cylindrical points lie on the qx axis.
    pub fn points(&self) -> Vec<(f64, f64, f64)> {
        let mut out = Vec::with_capacity(self.len());
        match self {
            Grid::Cartesian { omega, qx, qy } => {
                for &w in omega {
                    for &x in qx {
                        for &y in qy {
                            out.push((w, x, y));
                        }
                    }
                }
            }
            Grid::Cylindrical { omega, q } => {
                for &w in omega {
                    for &k in q {
                        out.push((w, k, 0.0));
                    }
                }
            }
        }
        out
    }

    pub fn omega_max(&self) -> f64 {
        let omega = match self {
            Grid::Cartesian { omega, .. } | Grid::Cylindrical { omega, .. } => omega,
        };
        omega.iter().fold(0.0f64, |m, w| m.max(w.abs()))
    }
}

/// A validated scenario in natural units.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub cavity: CavityConfig,
    pub grid: Grid,
    pub subtract_vacuum: bool,
    pub environment_temperature: f64,
    pub units: Option<UnitSystem>,
    pub source: ConfigFile,
}

impl ConfigFile {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let path = e
                .span()
                .map(|s| locate(text, s.start))
                .unwrap_or_else(|| "<document>".into());
            CliError::config(path, e.message().to_string())
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is always representable")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml(&text)
    }

    /// Validates and converts to natural units. `fallback_name` is used
    /// when the file has no `name`.
    pub fn resolve(&self, fallback_name: &str) -> Result<Scenario> {
        let units = match self.units.reference_temperature_k {
            Some(t) => {
                Some(UnitSystem::new(t).map_err(|e| CliError::config("units.reference_temperature_K", e.to_string()))?)
            }
            None => None,
        };
        let name = self.name.clone().unwrap_or_else(|| fallback_name.to_string());
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || "_-.".contains(c)) {
            return Err(CliError::config("name", format!("`{name}` is not a usable file stem")));
        }

        let a = pick(
            "cavity.a",
            self.cavity.a,
            self.cavity.a_um.map(|x| (x, SiUnit::Micrometre)),
            units.as_ref(),
        )?
        .ok_or_else(|| CliError::config("cavity.a", "gap width is required"))?;
        let lower = resolve_body("cavity.lower", &self.cavity.lower, units.as_ref())?;
        let upper = resolve_body("cavity.upper", &self.cavity.upper, units.as_ref())?;
        if lower.velocity != 0.0 {
            return Err(CliError::config(
                "cavity.lower.velocity",
                "only the upper body may move",
            ));
        }
        let cavity = CavityConfig::new(a, lower, upper).map_err(|e| CliError::config("cavity", e.to_string()))?;

        let grid = self.resolve_grid()?;
        let environment_temperature = pick(
            "options.environment_temperature",
            self.options.environment_temperature,
            self.options.environment_temperature_k.map(|t| (t, SiUnit::Kelvin)),
            units.as_ref(),
        )?
        .unwrap_or(0.0);
        if !(environment_temperature >= 0.0) {
            return Err(CliError::config(
                "options.environment_temperature",
                "must be nonnegative",
            ));
        }

        Ok(Scenario {
            name,
            cavity,
            grid,
            subtract_vacuum: self.options.subtract_vacuum,
            environment_temperature,
            units,
            source: self.clone(),
        })
    }

    fn resolve_grid(&self) -> Result<Grid> {
        let g = &self.grid;
        g.omega.validate("grid.omega")?;
        let omega = g.omega.values();
        if omega.contains(&0.0) {
            return Err(CliError::config("grid.omega", "zero frequency is not allowed"));
        }
        let axis = |spec: &Option<AxisSpec>, key: &str| -> Result<Vec<f64>> {
            let path = format!("grid.{key}");
            let spec = spec.as_ref().ok_or_else(|| {
                CliError::config(
                    path.as_str(),
                    format!("required for a {:?} grid", g.kind).to_lowercase(),
                )
            })?;
            spec.validate(&path)?;
            Ok(spec.values())
        };
        let forbid = |spec: &Option<AxisSpec>, key: &str| -> Result<()> {
            match spec {
                Some(_) => Err(CliError::config(
                    format!("grid.{key}"),
                    format!("not used by a {:?} grid", g.kind).to_lowercase(),
                )),
                None => Ok(()),
            }
        };
        match g.kind {
            GridKind::Cartesian => {
                forbid(&g.q, "q")?;
                Ok(Grid::Cartesian {
                    omega,
                    qx: axis(&g.qx, "qx")?,
                    qy: axis(&g.qy, "qy")?,
                })
            }
            GridKind::Cylindrical => {
                forbid(&g.qx, "qx")?;
                forbid(&g.qy, "qy")?;
                let q = axis(&g.q, "q")?;
                if q.iter().any(|&k| k < 0.0) {
                    return Err(CliError::config("grid.q", "|q| must be nonnegative"));
                }
                Ok(Grid::Cylindrical { omega, q })
            }
        }
    }
}

fn pick(
    path: &str,
    natural: Option<f64>,
    si: Option<(f64, SiUnit)>,
    units: Option<&UnitSystem>,
) -> Result<Option<f64>> {
    match (natural, si) {
        (Some(_), Some(_)) => Err(CliError::config(path, "given both in natural and SI units")),
        (Some(x), None) => Ok(Some(x)),
        (None, Some((x, unit))) => {
            let sys = units.ok_or_else(|| CliError::config(path, "SI value needs units.reference_temperature_K"))?;
            Ok(Some(sys.to_natural(x, unit)))
        }
        (None, None) => Ok(None),
    }
}

fn resolve_body(path: &str, body: &BodySection, units: Option<&UnitSystem>) -> Result<InterfaceSpec> {
    let field = |key: &str| format!("{path}.{key}");
    let unused = |key: &str, value: bool| -> Result<()> {
        if value {
            Err(CliError::config(
                field(key),
                format!("not used by a {:?} body", body.kind).to_lowercase(),
            ))
        } else {
            Ok(())
        }
    };
    let metal_keys = [
        ("plasma_frequency", body.plasma_frequency.is_some()),
        ("tau", body.tau.is_some()),
        ("skin_depth_nm", body.skin_depth_nm.is_some()),
        ("reference_temperature_K", body.reference_temperature_k.is_some()),
    ];
    let dielectric_keys = [("n", body.n.is_some()), ("delta", body.delta.is_some())];

    let material = match body.kind {
        MaterialKind::Dielectric => {
            for (k, v) in metal_keys {
                unused(k, v)?;
            }
            let n = body
                .n
                .ok_or_else(|| CliError::config(field("n"), "refractive index is required"))?;
            Material::Dielectric {
                n,
                delta: body.delta.unwrap_or(0.0),
            }
        }
        MaterialKind::Metal => {
            for (k, v) in dielectric_keys {
                unused(k, v)?;
            }
            let tau = body
                .tau
                .ok_or_else(|| CliError::config(field("tau"), "relaxation time is required"))?;
            let drude = match (body.plasma_frequency, body.skin_depth_nm) {
                (Some(wp), None) => {
                    unused("reference_temperature_K", body.reference_temperature_k.is_some())?;
                    DrudeImpedance::new(wp, tau)
                        .map_err(|e| CliError::config(field("plasma_frequency"), e.to_string()))?
                }
                (None, Some(depth)) => {
                    let sys = units.ok_or_else(|| {
                        CliError::config(field("skin_depth_nm"), "needs units.reference_temperature_K")
                    })?;
                    let omega_ref = body
                        .reference_temperature_k
                        .map(|t| sys.to_natural(t, SiUnit::Kelvin))
                        .unwrap_or(1.0);
                    DrudeImpedance::from_skin_depth(sys.to_natural(depth, SiUnit::Nanometre), tau, omega_ref)
                        .map_err(|e| CliError::config(field("skin_depth_nm"), e.to_string()))?
                }
                (Some(_), Some(_)) => {
                    return Err(CliError::config(
                        field("plasma_frequency"),
                        "give either plasma_frequency or skin_depth_nm",
                    ))
                }
                (None, None) => {
                    return Err(CliError::config(
                        field("plasma_frequency"),
                        "plasma_frequency or skin_depth_nm is required",
                    ))
                }
            };
            Material::Metal(drude)
        }
        MaterialKind::Mirror | MaterialKind::Vacuum => {
            for (k, v) in metal_keys.into_iter().chain(dielectric_keys) {
                unused(k, v)?;
            }
            if body.kind == MaterialKind::Mirror {
                Material::PerfectMirror
            } else {
                Material::vacuum()
            }
        }
    };
    material.validate().map_err(|e| core_error(path, e))?;

    let temperature = pick(
        &field("temperature"),
        body.temperature,
        body.temperature_k.map(|t| (t, SiUnit::Kelvin)),
        units,
    )?
    .unwrap_or(0.0);
    let spec = InterfaceSpec {
        material,
        temperature,
        velocity: body.velocity.unwrap_or(0.0),
    };
    spec.validate().map_err(|e| core_error(path, e))?;
    Ok(spec)
}

fn core_error(path: &str, e: casimir_keldysh::Error) -> CliError {
    match e {
        casimir_keldysh::Error::InvalidParameter { name, reason } => CliError::config(format!("{path}.{name}"), reason),
        casimir_keldysh::Error::Superluminal(_) => CliError::config(format!("{path}.velocity"), e.to_string()),
        other => CliError::config(path, other.to_string()),
    }
}

/// Dotted key path of the table enclosing byte offset `pos`.
fn locate(text: &str, pos: usize) -> String {
    let mut section = String::new();
    let mut line_no = 0;
    for (i, line) in text[..pos.min(text.len())].lines().enumerate() {
        line_no = i + 1;
        let t = line.trim();
        if t.starts_with('[') && t.ends_with(']') {
            section = t.trim_matches(|c| c == '[' || c == ']').trim().to_string();
        }
    }
    if section.is_empty() {
        format!("line {line_no}")
    } else {
        format!("{section} (line {line_no})")
    }
}
