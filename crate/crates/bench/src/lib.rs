//! Fixtures shared by the benchmarks.

use bspsk_core::harness::{preset, ScenarioConfig};

/// The two-ray preset trimmed to a single noisy trial.
pub fn single_trial(preset_name: &str) -> ScenarioConfig {
    let mut cfg = preset(preset_name).expect("known preset");
    cfg.n_trials = 1;
    cfg.snr_db_list = vec![Some(20.0)];
    cfg
}

/// Alternating bit pattern of length `n`.
pub fn bit_pattern(n: usize) -> Vec<u8> {
    (0..n).map(|i| (i % 3 == 0) as u8).collect()
}
