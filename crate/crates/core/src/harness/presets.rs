use std::f64::consts::TAU;

use crate::channel::{FadingMode, GainPath, TapProfile, TapSpec};
use crate::error::{Error, Result};
use crate::sweep::{ModulationParams, SweepParams};

use super::config::{ChannelConfig, EstimatorMode, ScenarioConfig, SnrReference};

pub const PRESET_NAMES: [&str; 3] = ["paper_fig12", "selfconsistent_2tap", "flat_awgn"];

pub fn preset(name: &str) -> Result<ScenarioConfig> {
    match name {
        "paper_fig12" => Ok(paper_fig12()),
        "selfconsistent_2tap" => Ok(selfconsistent_2tap()),
        "flat_awgn" => Ok(flat_awgn()),
        other => Err(Error::UnknownPreset(other.to_string())),
    }
}

fn two_ray() -> TapProfile {
    TapProfile::new(vec![
        TapSpec {
            delay_s: 0.0,
            power_db: 0.0,
        },
        TapSpec {
            delay_s: 1e-6,
            power_db: -4.0,
        },
    ])
    .expect("valid two-ray profile")
}

/// Low-frequency sweep (ω_c = 1e5 rad/s, T_c = 31.25 ms) traced noiselessly
/// through the two-ray channel.
fn paper_fig12() -> ScenarioConfig {
    let sweep = SweepParams::new(1e5, 0.75, 120.0, 31.25e-3).expect("valid sweep");
    let m = 10;
    let modulation = ModulationParams {
        order: 2,
        symbol_duration: sweep.period / m as f64,
        symbol_energy: 1.0,
        symbols_per_sweep: m,
    };
    ScenarioConfig {
        sweep,
        modulation,
        channel: ChannelConfig {
            taps: two_ray(),
            mode: FadingMode::Fixed,
            gain_path: GainPath::Real,
        },
        snr_db_list: vec![None],
        snr_reference: SnrReference::PerSample,
        n_trials: 1,
        sweeps_per_realization: 1,
        seed: 12,
        estimator_mode: EstimatorMode::Sounding,
        sample_rate: 1e6,
        grid_points: 513,
        relax_cycle_alignment: true,
        waveform_trace: true,
        spectrum_check: false,
    }
}

/// 8-12 MHz sweep over a two-ray channel with a 1 µs echo.
fn selfconsistent_2tap() -> ScenarioConfig {
    let sweep = SweepParams::new(TAU * 10e6, 1000.0, TAU * 4e6, 1e-3).expect("valid sweep");
    let modulation = ModulationParams::for_sweep(&sweep, 2, 1.0, 20).expect("valid modulation");
    ScenarioConfig {
        sweep,
        modulation,
        channel: ChannelConfig {
            taps: two_ray(),
            mode: FadingMode::Fixed,
            gain_path: GainPath::Real,
        },
        snr_db_list: vec![None, Some(40.0), Some(20.0), Some(10.0)],
        snr_reference: SnrReference::PerSample,
        n_trials: 4,
        sweeps_per_realization: 1,
        seed: 2024,
        estimator_mode: EstimatorMode::Sounding,
        sample_rate: 100e6,
        grid_points: 513,
        relax_cycle_alignment: false,
        waveform_trace: false,
        spectrum_check: false,
    }
}

/// BPSK over a flat channel with genie equalization, 1e5 bits per point.
fn flat_awgn() -> ScenarioConfig {
    let sweep = SweepParams::new(TAU * 1e6, 1000.0, TAU * 4e5, 1e-3).expect("valid sweep");
    let modulation = ModulationParams::for_sweep(&sweep, 2, 1.0, 20).expect("valid modulation");
    ScenarioConfig {
        sweep,
        modulation,
        channel: ChannelConfig {
            taps: TapProfile::flat(),
            mode: FadingMode::Fixed,
            gain_path: GainPath::Real,
        },
        snr_db_list: [0.0, 2.0, 4.0, 6.0, 8.0].into_iter().map(Some).collect(),
        snr_reference: SnrReference::Ebn0,
        n_trials: 500,
        sweeps_per_realization: 10,
        seed: 7,
        estimator_mode: EstimatorMode::Genie,
        sample_rate: 10e6,
        grid_points: 513,
        relax_cycle_alignment: false,
        waveform_trace: false,
        spectrum_check: false,
    }
}
