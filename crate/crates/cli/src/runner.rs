//! Grid sweeps and their output files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use casimir_keldysh::energy::evaluate_spectrum;
use casimir_keldysh::quadrature::QSettings;
use casimir_keldysh::{Error as CoreError, Material, SpectralPoint};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Grid, Scenario};
use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct RowFlags {
    pub light_cone_skipped: bool,
    pub resonance_skipped: bool,
    pub vacuum_subtracted: bool,
}

impl RowFlags {
    /// `|`-joined flag names, or `none`.
    pub fn label(&self) -> String {
        let names: Vec<&str> = [
            (self.light_cone_skipped, "light_cone_skipped"),
            (self.resonance_skipped, "resonance_skipped"),
            (self.vacuum_subtracted, "vacuum_subtracted"),
        ]
        .into_iter()
        .filter_map(|(on, name)| on.then_some(name))
        .collect();
        if names.is_empty() {
            "none".into()
        } else {
            names.join("|")
        }
    }

    pub fn skipped(&self) -> bool {
        self.light_cone_skipped || self.resonance_skipped
    }
}

/// One grid point. `value` is the positive-frequency spectrum
/// `U(ω) + U(−ω) = 2U(ω)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub pt: SpectralPoint,
    pub value: f64,
    pub flags: RowFlags,
}

pub fn evaluate_point(scenario: &Scenario, omega: f64, qx: f64, qy: f64) -> Result<Row> {
    let pt = SpectralPoint::new(omega, qx, qy);
    let cfg = &scenario.cavity;
    let env = scenario.subtract_vacuum.then_some(scenario.environment_temperature);
    let skipped = |flags: RowFlags| Row { pt, value: 0.0, flags };
    let base = RowFlags {
        vacuum_subtracted: scenario.subtract_vacuum,
        ..RowFlags::default()
    };
    let light_cone = RowFlags {
        light_cone_skipped: true,
        ..base
    };
    if (omega * omega - pt.q_sqr()).abs() <= cfg.floors.light_cone {
        return Ok(skipped(light_cone));
    }
    match evaluate_spectrum(cfg, pt, env) {
        Ok(p) => Ok(Row {
            pt,
            value: 2.0 * p.value,
            flags: RowFlags {
                resonance_skipped: p.flags.resonance_skipped,
                ..base
            },
        }),
        Err(CoreError::LightConeSingularity { .. }) => Ok(skipped(light_cone)),
        Err(source) => Err(CliError::Evaluation { omega, qx, qy, source }),
    }
}

/// Evaluates every grid point on a pool of `threads` workers. Rows come
/// back in grid order regardless of scheduling.
pub fn run_grid(scenario: &Scenario, threads: usize) -> Result<Vec<Row>> {
    let points = scenario.grid.points();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| CliError::ThreadPool(e.to_string()))?;
    pool.install(|| {
        points
            .par_iter()
            .map(|&(w, x, y)| evaluate_point(scenario, w, x, y))
            .collect::<Result<Vec<_>>>()
    })
}

/// 17 significant digits in scientific notation.
pub fn format_number(x: f64) -> String {
    // no negative zero
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

pub fn render_csv(grid: &Grid, rows: &[Row]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(grid.header());
    out.push('\n');
    for row in rows {
        let p = row.pt;
        match grid {
            Grid::Cartesian { .. } => write!(
                out,
                "{},{},{},",
                format_number(p.omega),
                format_number(p.qx),
                format_number(p.qy)
            ),
            Grid::Cylindrical { .. } => write!(out, "{},{},", format_number(p.omega), format_number(p.q())),
        }
        .expect("writing to a String");
        out.push_str(&format_number(row.value));
        out.push(',');
        out.push_str(&row.flags.label());
        out.push('\n');
    }
    out
}

/// Writes `contents` next to `path` and renames it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let file_name = path.file_name().and_then(|n| n.to_str()).unwrap_or("output");
    let tmp = path.with_file_name(format!(".{file_name}.partial"));
    let err = |source| CliError::Write {
        path: path.to_path_buf(),
        source,
    };
    fs::write(&tmp, contents).map_err(err)?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        err(e)
    })
}

#[derive(Debug, Serialize)]
struct BodySummary {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    plasma_frequency: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    relaxation_time: Option<f64>,
    temperature: f64,
    velocity: f64,
}

impl BodySummary {
    fn new(spec: &casimir_keldysh::InterfaceSpec) -> Self {
        let mut s = BodySummary {
            kind: "",
            n: None,
            delta: None,
            plasma_frequency: None,
            relaxation_time: None,
            temperature: spec.temperature,
            velocity: spec.velocity,
        };
        match spec.material {
            Material::Dielectric { n, delta } => {
                s.kind = "dielectric";
                s.n = Some(n);
                s.delta = Some(delta);
            }
            Material::Metal(m) => {
                s.kind = "metal";
                s.plasma_frequency = Some(m.plasma_frequency);
                s.relaxation_time = Some(m.relaxation_time);
            }
            Material::PerfectMirror => s.kind = "mirror",
        }
        s
    }
}

#[derive(Debug, Serialize)]
struct Resolved {
    a: f64,
    lower: BodySummary,
    upper: BodySummary,
    subtract_vacuum: bool,
    environment_temperature: f64,
    grid_points: usize,
}

#[derive(Debug, Serialize)]
struct UnitSummary {
    #[serde(rename = "reference_temperature_K")]
    reference_temperature_k: f64,
    thermal_wavelength_m: f64,
    gap_width_um: f64,
}

#[derive(Debug, Serialize)]
struct TailBounds {
    kappa_max: f64,
    propagating: f64,
    evanescent: f64,
}

#[derive(Debug, Serialize)]
struct FlagCounts {
    light_cone_skipped: usize,
    resonance_skipped: usize,
}

#[derive(Debug, Serialize)]
struct Sidecar<'a> {
    name: &'a str,
    library_version: &'static str,
    runner_version: &'static str,
    csv: String,
    value_column: &'static str,
    config: &'a crate::config::ConfigFile,
    resolved: Resolved,
    #[serde(skip_serializing_if = "Option::is_none")]
    units: Option<UnitSummary>,
    tail_error_bounds: TailBounds,
    flag_counts: FlagCounts,
}

pub fn render_sidecar(scenario: &Scenario, rows: &[Row], csv_name: &str) -> Result<String> {
    let cfg = &scenario.cavity;
    // q integrals at the largest grid frequency truncate the evanescent
    // range here; the propagating disc is closed
    let settings = QSettings::for_gap(cfg.a, scenario.grid.omega_max().max(f64::MIN_POSITIVE));
    let sidecar = Sidecar {
        name: &scenario.name,
        library_version: casimir_keldysh::VERSION,
        runner_version: env!("CARGO_PKG_VERSION"),
        csv: csv_name.to_string(),
        value_column: "U(omega) + U(-omega), energy per area integrated across the gap",
        config: &scenario.source,
        resolved: Resolved {
            a: cfg.a,
            lower: BodySummary::new(&cfg.lower),
            upper: BodySummary::new(&cfg.upper),
            subtract_vacuum: scenario.subtract_vacuum,
            environment_temperature: scenario.environment_temperature,
            grid_points: scenario.grid.len(),
        },
        units: scenario.units.map(|u| UnitSummary {
            reference_temperature_k: u.reference_temperature_k,
            thermal_wavelength_m: u.length_unit_m,
            gap_width_um: u.from_natural(cfg.a, casimir_keldysh::units::SiUnit::Micrometre),
        }),
        tail_error_bounds: TailBounds {
            kappa_max: settings.kappa_max,
            propagating: 0.0,
            evanescent: settings.tail_bound(),
        },
        flag_counts: FlagCounts {
            light_cone_skipped: rows.iter().filter(|r| r.flags.light_cone_skipped).count(),
            resonance_skipped: rows.iter().filter(|r| r.flags.resonance_skipped).count(),
        },
    };
    let mut text = serde_json::to_string_pretty(&sidecar)?;
    text.push('\n');
    Ok(text)
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub csv: PathBuf,
    pub sidecar: PathBuf,
    pub rows: Vec<Row>,
}

/// Evaluates the grid and writes `<name>.csv` and `<name>.json` into
/// `out_dir`. Nothing is left on disk when evaluation fails.
pub fn run_scenario(scenario: &Scenario, out_dir: &Path, threads: usize) -> Result<RunOutput> {
    let rows = run_grid(scenario, threads)?;
    fs::create_dir_all(out_dir).map_err(|source| CliError::Write {
        path: out_dir.to_path_buf(),
        source,
    })?;
    let csv_name = format!("{}.csv", scenario.name);
    let csv = out_dir.join(&csv_name);
    let sidecar = out_dir.join(format!("{}.json", scenario.name));
    let json = render_sidecar(scenario, &rows, &csv_name)?;
    write_atomic(&csv, render_csv(&scenario.grid, &rows).as_bytes())?;
    write_atomic(&sidecar, json.as_bytes())?;
    Ok(RunOutput { csv, sidecar, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ConfigFile;

    fn small() -> Scenario {
        ConfigFile::from_toml(
            r#"
[cavity]
a = 0.5
[cavity.lower]
kind = "dielectric"
n = 1.5
delta = 0.1
temperature = 1.0
[cavity.upper]
kind = "mirror"
[grid]
kind = "cylindrical"
omega = [1.0, 2.0]
q = [0.5, 1.0, 3.0]
"#,
        )
        .unwrap()
        .resolve("small")
        .unwrap()
    }

    #[test]
    fn number_format() {
        assert_eq!(format_number(2.0), "2.0000000000000000e0");
        assert_eq!(format_number(-0.375), "-3.7500000000000000e-1");
    }

    #[test]
    fn flags_label() {
        assert_eq!(RowFlags::default().label(), "none");
        let f = RowFlags {
            resonance_skipped: true,
            vacuum_subtracted: true,
            ..RowFlags::default()
        };
        assert_eq!(f.label(), "resonance_skipped|vacuum_subtracted");
    }

    #[test]
    fn light_cone_points_are_flagged() {
        let s = small();
        let rows = run_grid(&s, 2).unwrap();
        assert_eq!(rows.len(), 6);
        let cone = rows.iter().find(|r| r.pt.omega == 1.0 && r.pt.qx == 1.0).unwrap();
        assert!(cone.flags.light_cone_skipped);
        assert_eq!(cone.value, 0.0);
        assert!(rows.iter().filter(|r| !r.flags.skipped()).all(|r| r.value > 0.0));
    }

    #[test]
    fn csv_layout() {
        let s = small();
        let rows = run_grid(&s, 1).unwrap();
        let text = render_csv(&s.grid, &rows);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "omega,q,U,flags");
        assert_eq!(lines.len(), 7);
        assert!(
            lines[2].starts_with("1.0000000000000000e0,1.0000000000000000e0,0.0000000000000000e0,light_cone_skipped")
        );
    }
}
