//! Scenario configuration, presets, Monte-Carlo runner and result files.

mod config;
mod output;
mod presets;
mod report;
mod runner;

pub use config::{ChannelConfig, EstimatorMode, ScenarioConfig, SnrReference};
pub use output::{
    emit_results, emit_spectrum, read_results, BER_FILE, RECEIVED_FILE, RESULTS_FILE,
    SPECTRUM_FILE, TAPS_FILE, TRANSFER_FILE, WAVEFORM_FILE,
};
pub use presets::{preset, PRESET_NAMES};
pub use report::{
    SeedRecord, SeedSource, TransferSnapshot, TrialReport, WaveformTrace, SCHEMA_VERSION,
};
pub use runner::{relative_rms_error, run_scenario, run_trial, TrialOutcome, MAX_TRACE_POINTS};

use crate::error::{Error, Result};

/// Environment variable that overrides the configured seed.
pub const SEED_ENV: &str = "BSPSK_SEED";

/// Applies a seed override (the value of `BSPSK_SEED`, if set) to `cfg`.
pub fn apply_seed_override(cfg: &mut ScenarioConfig, value: Option<&str>) -> Result<SeedSource> {
    match value {
        None => Ok(SeedSource::Config),
        Some(v) => {
            cfg.seed = v.trim().parse().map_err(|_| {
                Error::Configuration(format!(
                    "{SEED_ENV}={v:?} is not an unsigned 64-bit integer"
                ))
            })?;
            Ok(SeedSource::Env)
        }
    }
}

/// Loads a scenario from a JSON file.
pub fn load_config(path: &std::path::Path) -> Result<ScenarioConfig> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    ScenarioConfig::from_json(&text).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })
}
