use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{add_awgn, apply_channel, draw_realization, ChannelRealization};
use crate::error::{Error, Result};
use crate::receiver::{
    correlate_demod, envelope_to_transfer, estimate_taps, slicer, zf_equalize, zf_equalize_genie,
    EnvelopeDetector, TimeInterval, TransferEstimate,
};
use crate::rng::{derive_seed, domain, keyed_stream};
use crate::signal::SampledSignal;
use crate::spectral::{validate_spectrum, MIN_VALIDATION_PERIODS};
use crate::sweep::{modulate, sawtooth, sounding_sweep};

use super::config::{EstimatorMode, ScenarioConfig};
use super::report::{
    SeedRecord, SeedSource, TransferSnapshot, TrialReport, WaveformTrace, SCHEMA_VERSION,
};

/// Longest trace written to the report.
pub const MAX_TRACE_POINTS: usize = 4096;

/// Result of one trial at one SNR point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub n_bits: u64,
    pub bit_errors: u64,
    pub est_rms_error: Option<f64>,
    pub tap_delay_error: Option<f64>,
    /// Effective channel the trial ran through.
    pub channel: ChannelRealization,
    pub estimate: Option<TransferEstimate>,
}

struct Capture {
    trace: Option<WaveformTrace>,
}

/// Per-scenario state shared by every trial.
struct Plan<'a> {
    cfg: &'a ScenarioConfig,
    detector: Option<EnvelopeDetector>,
    mask: Vec<TimeInterval>,
    sweep_len: usize,
}

impl<'a> Plan<'a> {
    fn new(cfg: &'a ScenarioConfig) -> Result<Self> {
        cfg.validate()?;
        let p = &cfg.sweep;
        let sps = cfg.modulation.samples_per_symbol(cfg.sample_rate)?;
        let sweep_len = sps * cfg.modulation.symbols_per_sweep;
        let max_delay = cfg.channel.taps.max_delay();
        let (detector, mask) = match cfg.estimator_mode {
            EstimatorMode::Genie => (None, Vec::new()),
            mode => {
                let det = EnvelopeDetector::for_sweep(p, cfg.sample_rate, max_delay)?;
                let t_start = -p.period / 2.0;
                let boundaries: Vec<f64> = if mode == EstimatorMode::Modulated {
                    (0..=cfg.modulation.symbols_per_sweep)
                        .map(|k| t_start + k as f64 * cfg.modulation.symbol_duration)
                        .collect()
                } else {
                    vec![t_start, p.period / 2.0]
                };
                // The delayed echoes start late at every boundary, and the
                // zero-phase filter smears each disturbance by its settling time.
                let settle = det.settling_time();
                let mask = boundaries
                    .iter()
                    .map(|&b| TimeInterval::new(b - settle, b + max_delay + settle))
                    .collect();
                (Some(det), mask)
            }
        };
        Ok(Self {
            cfg,
            detector,
            mask,
            sweep_len,
        })
    }

    fn noise_seed(&self, stage: u64, snr_index: usize, trial: usize) -> u64 {
        derive_seed(
            derive_seed(derive_seed(self.cfg.seed, stage), snr_index as u64),
            trial as u64,
        )
    }

    /// Channel, truncation to the transmit frame, then noise.
    fn receive(
        &self,
        tx: &SampledSignal,
        ch: &ChannelRealization,
        snr_db: Option<f64>,
        noise_seed: u64,
    ) -> Result<SampledSignal> {
        let rx = apply_channel(tx, ch, self.cfg.channel.gain_path)
            .and_then(|r| r.slice(0, tx.len()))
            .map_err(|e| e.at_stage("channel"))?;
        match snr_db {
            None => Ok(rx),
            Some(snr) => add_awgn(&rx, self.cfg.per_sample_snr_db(snr), noise_seed)
                .map_err(|e| e.at_stage("noise")),
        }
    }

    fn estimate(
        &self,
        rx_sweep: &SampledSignal,
        reference_amplitude: f64,
    ) -> Result<(SampledSignal, TransferEstimate)> {
        let det = self
            .detector
            .as_ref()
            .expect("estimator modes carry a detector");
        let env = det.detect(rx_sweep).map_err(|e| e.at_stage("envelope"))?;
        let est = envelope_to_transfer(
            &env,
            &self.cfg.sweep,
            reference_amplitude,
            &self.mask,
            self.cfg.grid_points,
        )
        .map_err(|e| e.at_stage("estimate"))?;
        Ok((env, est))
    }

    fn execute(
        &self,
        snr_index: usize,
        trial: usize,
        capture: bool,
    ) -> Result<(TrialOutcome, Option<Capture>)> {
        let cfg = self.cfg;
        let (p, mp, fs) = (&cfg.sweep, &cfg.modulation, cfg.sample_rate);
        let snr = cfg.snr_db_list[snr_index];

        let realization = draw_realization(
            &cfg.channel.taps,
            derive_seed(cfg.seed, trial as u64),
            cfg.channel.mode,
        );
        let truth = realization.effective(cfg.channel.gain_path);

        let mut rng = keyed_stream(cfg.seed, [domain::BITS, trial as u64, 0]);
        let bits: Vec<u8> = (0..cfg.bits_per_trial())
            .map(|_| rng.random::<bool>() as u8)
            .collect();
        let tx = modulate(&bits, p, mp, cfg.sweeps_per_realization, fs)
            .map_err(|e| e.at_stage("modulate"))?;
        let rx = self.receive(
            &tx,
            &realization,
            snr,
            self.noise_seed(domain::NOISE_DATA, snr_index, trial),
        )?;

        let amplitude = mp.amplitude();
        let mut trace_src: Option<(SampledSignal, SampledSignal, Option<SampledSignal>)> = None;
        let estimate = match cfg.estimator_mode {
            EstimatorMode::Genie => {
                if capture {
                    let tx1 = tx.slice(0, self.sweep_len)?;
                    let rx1 = rx.slice(0, self.sweep_len)?;
                    trace_src = Some((tx1, rx1, None));
                }
                None
            }
            EstimatorMode::Sounding => {
                let probe =
                    sounding_sweep(p, amplitude, 1, fs).map_err(|e| e.at_stage("sounding"))?;
                let rx_probe = self.receive(
                    &probe,
                    &realization,
                    snr,
                    self.noise_seed(domain::NOISE_SOUNDING, snr_index, trial),
                )?;
                let (env, est) = self.estimate(&rx_probe, amplitude)?;
                if capture {
                    trace_src = Some((probe, rx_probe, Some(env)));
                }
                Some(est)
            }
            EstimatorMode::Modulated => {
                let rx1 = rx.slice(0, self.sweep_len)?;
                let (env, est) = self.estimate(&rx1, amplitude)?;
                if capture {
                    trace_src = Some((tx.slice(0, self.sweep_len)?, rx1, Some(env)));
                }
                Some(est)
            }
        };

        let proj = correlate_demod(&rx, p, mp).map_err(|e| e.at_stage("demodulate"))?;
        let eq = match &estimate {
            None => zf_equalize_genie(&proj, &truth, p, mp),
            Some(est) => zf_equalize(&proj, est, p, mp).map_err(|e| e.at_stage("equalize"))?,
        };
        let decided = slicer(&eq, mp);
        let bit_errors = decided.iter().zip(&bits).filter(|(a, b)| a != b).count() as u64;

        let (est_rms_error, tap_delay_error) = match &estimate {
            None => (None, None),
            Some(est) => {
                let reference = TransferEstimate::from_channel(&truth, p, cfg.grid_points)?;
                (
                    Some(relative_rms_error(est, &reference)),
                    Some(self.tap_delay_error(est).map_err(|e| e.at_stage("taps"))?),
                )
            }
        };

        let captured = capture.then(|| Capture {
            trace: if cfg.waveform_trace {
                trace_src.map(|(t, r, e)| decimated_trace(p, &t, &r, e.as_ref()))
            } else {
                None
            },
        });
        Ok((
            TrialOutcome {
                n_bits: bits.len() as u64,
                bit_errors,
                est_rms_error,
                tap_delay_error,
                channel: truth,
                estimate,
            },
            captured,
        ))
    }

    /// Mean absolute difference between the true tap delays and the delays
    /// of the same number of dominant estimated taps.
    fn tap_delay_error(&self, est: &TransferEstimate) -> Result<f64> {
        let taps = estimate_taps(est)?;
        let mut truth: Vec<f64> = self
            .cfg
            .channel
            .taps
            .taps
            .iter()
            .map(|t| t.delay_s)
            .collect();
        truth.sort_by(f64::total_cmp);
        let found: Vec<f64> = taps
            .dominant(truth.len())
            .into_iter()
            .map(|k| taps.delays[k])
            .collect();
        Ok(truth
            .iter()
            .zip(&found)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
            / truth.len() as f64)
    }
}

/// RMS of `est − reference` over the valid points of `est`, divided by the
/// peak of `reference`.
pub fn relative_rms_error(est: &TransferEstimate, reference: &TransferEstimate) -> f64 {
    let (sum, n) = est
        .magnitude
        .iter()
        .zip(&reference.magnitude)
        .zip(&est.valid_mask)
        .filter(|(_, &v)| v)
        .fold((0.0, 0usize), |(s, n), ((a, b), _)| {
            (s + (a - b).powi(2), n + 1)
        });
    if n == 0 {
        return f64::INFINITY;
    }
    (sum / n as f64).sqrt() / reference.peak()
}

fn decimated_trace(
    p: &crate::sweep::SweepParams,
    tx: &SampledSignal,
    rx: &SampledSignal,
    env: Option<&SampledSignal>,
) -> WaveformTrace {
    let stride = tx.len().div_ceil(MAX_TRACE_POINTS).max(1);
    let pick = |s: &SampledSignal| {
        s.samples()
            .iter()
            .step_by(stride)
            .copied()
            .collect::<Vec<_>>()
    };
    let time_s: Vec<f64> = (0..tx.len())
        .step_by(stride)
        .map(|n| tx.time_at(n))
        .collect();
    WaveformTrace {
        sawtooth: time_s.iter().map(|&t| sawtooth(t, p)).collect(),
        time_s,
        transmitted: pick(tx),
        received: pick(rx),
        envelope: env.map(pick).unwrap_or_default(),
    }
}

/// Runs a single trial in isolation. Trials depend only on the seed and
/// their indices, so this matches the corresponding entry of a full run.
pub fn run_trial(cfg: &ScenarioConfig, snr_index: usize, trial: usize) -> Result<TrialOutcome> {
    if snr_index >= cfg.snr_db_list.len() || trial >= cfg.n_trials {
        return Err(Error::Range(format!(
            "trial ({snr_index}, {trial}) outside {} SNR points x {} trials",
            cfg.snr_db_list.len(),
            cfg.n_trials
        )));
    }
    Ok(Plan::new(cfg)?.execute(snr_index, trial, false)?.0)
}

/// Runs every trial at every SNR point and aggregates the results.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<TrialReport> {
    let started = Instant::now();
    if cfg.n_trials == 0 {
        return Err(Error::EmptyReport("n_trials is 0".into()));
    }
    if cfg.snr_db_list.is_empty() {
        return Err(Error::EmptyReport("snr_db_list is empty".into()));
    }
    let plan = Plan::new(cfg)?;
    let spectrum_check = if cfg.spectrum_check {
        Some(
            validate_spectrum(&cfg.sweep, cfg.sample_rate, MIN_VALIDATION_PERIODS)
                .map_err(|e| e.at_stage("spectrum"))?,
        )
    } else {
        None
    };

    let n_points = cfg.snr_db_list.len();
    let mut ber = Vec::with_capacity(n_points);
    let mut n_bits = Vec::with_capacity(n_points);
    let mut bit_errors = Vec::with_capacity(n_points);
    let mut est_rms_error = Vec::with_capacity(n_points);
    let mut tap_delay_errors = Vec::with_capacity(n_points);
    let mut first: Option<(TrialOutcome, Option<Capture>)> = None;

    for snr_index in 0..n_points {
        let mut outcomes = (0..cfg.n_trials)
            .into_par_iter()
            .map(|trial| plan.execute(snr_index, trial, snr_index == 0 && trial == 0))
            .collect::<Result<Vec<_>>>()?;
        let bits: u64 = outcomes.iter().map(|(o, _)| o.n_bits).sum();
        let errors: u64 = outcomes.iter().map(|(o, _)| o.bit_errors).sum();
        ber.push(errors as f64 / bits as f64);
        n_bits.push(bits);
        bit_errors.push(errors);
        est_rms_error.push(mean(outcomes.iter().map(|(o, _)| o.est_rms_error)));
        tap_delay_errors.push(mean(outcomes.iter().map(|(o, _)| o.tap_delay_error)));
        if snr_index == 0 {
            first = Some(outcomes.swap_remove(0));
        }
    }

    let (outcome, capture) = first.expect("at least one trial ran");
    let reference = TransferEstimate::from_channel(&outcome.channel, &cfg.sweep, cfg.grid_points)?;
    let (transfer_estimate, tap_estimate) = match &outcome.estimate {
        Some(est) => (
            TransferSnapshot {
                frequency_hz: est.grid.frequencies().collect(),
                mag_true: reference.magnitude.clone(),
                mag_est: est.magnitude.clone(),
                valid: est.valid_mask.clone(),
            },
            Some(estimate_taps(est).map_err(|e| e.at_stage("taps"))?),
        ),
        None => (
            TransferSnapshot {
                frequency_hz: reference.grid.frequencies().collect(),
                mag_true: reference.magnitude.clone(),
                mag_est: reference.magnitude.clone(),
                valid: reference.valid_mask.clone(),
            },
            None,
        ),
    };

    Ok(TrialReport {
        schema_version: SCHEMA_VERSION,
        config_echo: cfg.clone(),
        seed_record: SeedRecord {
            seed: cfg.seed,
            source: SeedSource::Config,
        },
        snr_db: cfg.snr_db_list.clone(),
        ber,
        n_bits,
        bit_errors,
        est_rms_error,
        tap_delay_errors,
        runtime_s: started.elapsed().as_secs_f64(),
        transfer_estimate,
        tap_estimate,
        traces: capture.and_then(|c| c.trace),
        spectrum_check,
    })
}

fn mean(values: impl Iterator<Item = Option<f64>>) -> Option<f64> {
    let v: Vec<f64> = values.collect::<Option<Vec<_>>>()?;
    (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64)
}
