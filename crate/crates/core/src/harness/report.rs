use serde::{Deserialize, Serialize};

use crate::receiver::TapEstimate;
use crate::spectral::SpectrumReport;

use super::config::ScenarioConfig;

/// Version of the `results.json` layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedSource {
    Config,
    /// Taken from the `BSPSK_SEED` environment variable.
    Env,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedRecord {
    pub seed: u64,
    pub source: SeedSource,
}

/// Estimated and true `|H|` of the first trial at the first SNR point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransferSnapshot {
    pub frequency_hz: Vec<f64>,
    pub mag_true: Vec<f64>,
    pub mag_est: Vec<f64>,
    pub valid: Vec<bool>,
}

/// Decimated time series of one sweep of the first trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveformTrace {
    pub time_s: Vec<f64>,
    pub sawtooth: Vec<f64>,
    pub transmitted: Vec<f64>,
    pub received: Vec<f64>,
    /// Empty when no envelope was computed (genie mode).
    pub envelope: Vec<f64>,
}

/// Aggregated outcome of a scenario; one entry per SNR point in the vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub schema_version: u32,
    pub config_echo: ScenarioConfig,
    pub seed_record: SeedRecord,
    /// `null` marks a noiseless point.
    pub snr_db: Vec<Option<f64>>,
    pub ber: Vec<f64>,
    pub n_bits: Vec<u64>,
    pub bit_errors: Vec<u64>,
    /// Mean RMS error of the `|H|` estimate over valid points, relative to
    /// the peak of the true `|H|`. `null` in genie mode.
    pub est_rms_error: Vec<Option<f64>>,
    /// Mean absolute error (s) of the dominant tap delays. `null` in genie mode.
    pub tap_delay_errors: Vec<Option<f64>>,
    pub runtime_s: f64,
    pub transfer_estimate: TransferSnapshot,
    pub tap_estimate: Option<TapEstimate>,
    pub traces: Option<WaveformTrace>,
    pub spectrum_check: Option<SpectrumReport>,
}
