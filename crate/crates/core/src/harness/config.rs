use serde::{Deserialize, Serialize};

use crate::channel::{FadingMode, GainPath, TapProfile};
use crate::error::{Error, Result};
use crate::receiver::{CutoffPlan, EnvelopeDetector, MIN_VALID_FRACTION};
use crate::sweep::{ModulationParams, SweepParams};

/// How the channel estimate used by the equalizer is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimatorMode {
    /// A dedicated unmodulated sweep precedes the data.
    Sounding,
    /// The first data sweep itself, with symbol transients masked.
    Modulated,
    /// The true complex response; no estimation.
    Genie,
}

/// Meaning of the values in `snr_db_list`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SnrReference {
    /// Energy per bit over noise spectral density, `E_b/N_0`.
    #[default]
    Ebn0,
    /// Received signal power over noise power per sample.
    PerSample,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelConfig {
    pub taps: TapProfile,
    pub mode: FadingMode,
    #[serde(default)]
    pub gain_path: GainPath,
}

fn default_sweeps() -> usize {
    1
}

fn default_grid_points() -> usize {
    513
}

/// Everything needed to reproduce one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub sweep: SweepParams,
    pub modulation: ModulationParams,
    pub channel: ChannelConfig,
    /// SNR points in dB; `null` runs without noise.
    pub snr_db_list: Vec<Option<f64>>,
    #[serde(default)]
    pub snr_reference: SnrReference,
    pub n_trials: usize,
    #[serde(default = "default_sweeps")]
    pub sweeps_per_realization: usize,
    pub seed: u64,
    pub estimator_mode: EstimatorMode,
    pub sample_rate: f64,
    /// Points of the band grid the estimate is sampled on.
    #[serde(default = "default_grid_points")]
    pub grid_points: usize,
    /// Accept a non-integer number of carrier cycles per symbol.
    #[serde(default)]
    pub relax_cycle_alignment: bool,
    /// Emit decimated waveform traces of the first trial.
    #[serde(default)]
    pub waveform_trace: bool,
    /// Run the narrowband line-spectrum check alongside the scenario.
    #[serde(default)]
    pub spectrum_check: bool,
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Checks every module invariant before any signal is synthesized.
    pub fn validate(&self) -> Result<()> {
        self.sweep.validate()?;
        self.modulation
            .validate(&self.sweep, !self.relax_cycle_alignment)?;
        self.sweep.check_sample_rate(self.sample_rate)?;
        let sps = self.modulation.samples_per_symbol(self.sample_rate)?;
        self.channel.taps.validate()?;
        self.channel.taps.check_grid(self.sample_rate)?;
        if self.sweeps_per_realization == 0 {
            return Err(Error::Configuration(
                "sweeps_per_realization must be at least 1".into(),
            ));
        }
        if self.grid_points < 3 {
            return Err(Error::Configuration(format!(
                "grid_points must be at least 3, got {}",
                self.grid_points
            )));
        }
        if let Some(bad) = self.snr_db_list.iter().flatten().find(|v| !v.is_finite()) {
            return Err(Error::Configuration(format!(
                "SNR values must be finite (use null for noiseless), got {bad}"
            )));
        }
        if self.estimator_mode != EstimatorMode::Genie {
            self.check_estimator(sps)?;
        }
        Ok(())
    }

    fn check_estimator(&self, sps: usize) -> Result<()> {
        if self.sweep.sweep_rate() <= 0.0 {
            return Err(Error::Configuration(
                "envelope estimation needs a swept carrier (K and K_f positive)".into(),
            ));
        }
        let plan = CutoffPlan::for_sweep(&self.sweep, self.channel.taps.max_delay());
        plan.check()?;
        let det = EnvelopeDetector::with_cutoff(self.sample_rate, plan.cutoff_hz)?;
        let sweep_len = sps * self.modulation.symbols_per_sweep;
        if det.filter_len() > sweep_len {
            return Err(Error::Configuration(format!(
                "envelope filter ({} taps) is longer than one sweep ({sweep_len} samples)",
                det.filter_len()
            )));
        }
        let delay = (self.channel.taps.max_delay() * self.sample_rate).round() as usize;
        let masked_per_edge = 2 * det.settling_samples() + delay;
        let span = match self.estimator_mode {
            EstimatorMode::Modulated => sps,
            _ => sweep_len,
        };
        let valid = 1.0 - masked_per_edge as f64 / span as f64;
        if valid < MIN_VALID_FRACTION {
            return Err(Error::Configuration(format!(
                "transient masking would leave {:.1}% of each {} valid (need {:.0}%)",
                100.0 * valid.max(0.0),
                if span == sps { "symbol" } else { "sweep" },
                100.0 * MIN_VALID_FRACTION
            )));
        }
        Ok(())
    }

    /// Per-sample SNR in dB for an entry of `snr_db_list`.
    pub fn per_sample_snr_db(&self, snr_db: f64) -> f64 {
        match self.snr_reference {
            SnrReference::PerSample => snr_db,
            SnrReference::Ebn0 => {
                // SNR = 2·k·(E_b/N_0) / (T_s·f_s) for a real passband signal.
                let k = self.modulation.bits_per_symbol() as f64;
                let ratio = 2.0 * k / (self.modulation.symbol_duration * self.sample_rate);
                snr_db + 10.0 * ratio.log10()
            }
        }
    }

    pub fn bits_per_trial(&self) -> usize {
        self.sweeps_per_realization
            * self.modulation.symbols_per_sweep
            * self.modulation.bits_per_symbol()
    }
}
