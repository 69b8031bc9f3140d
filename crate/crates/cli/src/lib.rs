//! Scenario runner for cavity energy spectra: TOML scenarios, built-in
//! presets, parallel grid sweeps and CSV/JSON output.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod checks;
pub mod config;
pub mod error;
pub mod presets;
pub mod runner;

use std::path::Path;

pub use config::{ConfigFile, Grid, Scenario};
pub use error::{CliError, Result};
pub use runner::{run_scenario, Row, RowFlags, RunOutput};

/// Scenario from a config file; `subtract_vacuum` forces vacuum
/// subtraction on.
pub fn scenario_from_file(path: &Path, subtract_vacuum: bool) -> Result<Scenario> {
    let mut cfg = ConfigFile::load(path)?;
    cfg.options.subtract_vacuum |= subtract_vacuum;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("scenario");
    cfg.resolve(stem)
}

pub fn preset_scenarios(name: &str, subtract_vacuum: bool) -> Result<Vec<Scenario>> {
    presets::preset(name)?
        .into_iter()
        .map(|mut cfg| {
            cfg.options.subtract_vacuum |= subtract_vacuum;
            if subtract_vacuum {
                cfg.name = cfg.name.map(|n| format!("{n}_subtracted"));
            }
            cfg.resolve(name)
        })
        .collect()
}
