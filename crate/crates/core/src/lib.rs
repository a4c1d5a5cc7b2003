//! Band-sweeping M-PSK simulator.
//!
//! A carrier swept linearly over a band once per period `T_c` carries `m`
//! M-PSK symbols per sweep on a pair of swept quadrature bases. The crate
//! synthesizes the waveform, passes it through a tapped-delay-line channel,
//! estimates `|H(f)|` from the received envelope and demodulates with a
//! correlator and zero-forcing equalizer.
//!
//! ```
//! use bspsk_core::{harness, run_scenario};
//!
//! let mut cfg = harness::preset("selfconsistent_2tap").unwrap();
//! cfg.n_trials = 1;
//! cfg.snr_db_list = vec![None];
//! let report = run_scenario(&cfg).unwrap();
//! assert_eq!(report.ber, vec![0.0]);
//! ```

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod error;
pub mod harness;
pub mod receiver;
pub mod rng;
pub mod signal;
pub mod spectral;
pub mod sweep;

pub use channel::{
    add_awgn, apply_channel, draw_realization, transfer_function, ChannelRealization, FadingMode,
    GainPath, Tap, TapProfile, TapSpec,
};
pub use error::{Error, Result};
pub use harness::{emit_results, read_results, run_scenario, ScenarioConfig, TrialReport};
pub use receiver::{
    correlate_demod, envelope_detect, envelope_to_transfer, estimate_taps, slicer, zf_equalize,
    TapEstimate, TransferEstimate,
};
pub use signal::{dft_magnitude, energy, inner_product, FrequencyGrid, SampledSignal};
pub use spectral::{nbfm_line_spectrum, sawtooth_fourier_coeff, validate_spectrum, SpectrumLine};
pub use sweep::{
    basis_pair, instantaneous_frequency, modulate, mpsk_map, sawtooth, sounding_sweep,
    sweep_bandwidth, sweep_phase, Iq, ModulationParams, SweepParams,
};
