//! Rectifier + low-pass envelope detector.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signal::{fft_convolve, SampledSignal};
use crate::sweep::SweepParams;

/// Required ratio between the carrier floor, the cutoff and the envelope rate.
pub const MIN_SEPARATION: f64 = 10.0;

/// Filter taps per cutoff period `fs / f_cut`.
const TAPS_PER_CUTOFF_PERIOD: f64 = 2.0;

/// Cutoff selection for a given sweep and delay spread.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutoffPlan {
    /// Lowest swept frequency, Hz.
    pub carrier_floor_hz: f64,
    /// Fastest expected variation of `|H(f(t))|` in time, Hz.
    pub envelope_rate_hz: f64,
    /// Geometric mean of the two.
    pub cutoff_hz: f64,
}

impl CutoffPlan {
    /// The channel ripple `|H(f)|` has period `1/τ` in frequency; the sweep
    /// crosses `B_Hz·τ` ripples per period `T_c`. At least one envelope
    /// cycle per sweep is assumed, so short delay spreads still get a
    /// usable cutoff.
    pub fn for_sweep(p: &SweepParams, max_delay_spread: f64) -> Self {
        let ripples = (p.bandwidth_hz() * max_delay_spread).max(1.0);
        let envelope_rate_hz = ripples / p.period;
        let carrier_floor_hz = p.f_min_hz();
        Self {
            carrier_floor_hz,
            envelope_rate_hz,
            cutoff_hz: (carrier_floor_hz * envelope_rate_hz).sqrt(),
        }
    }

    /// The smaller of the two separation ratios around the cutoff.
    pub fn margin(&self) -> f64 {
        (self.carrier_floor_hz / self.cutoff_hz).min(self.cutoff_hz / self.envelope_rate_hz)
    }

    pub fn check(&self) -> Result<()> {
        if self.margin() < MIN_SEPARATION {
            return Err(Error::Configuration(format!(
                "envelope detector cannot separate carrier ({} Hz) from channel ripple ({} Hz): margin {:.2} < {MIN_SEPARATION}",
                self.carrier_floor_hz,
                self.envelope_rate_hz,
                self.margin()
            )));
        }
        Ok(())
    }
}

/// Full-wave rectifier followed by a zero-phase windowed-sinc low-pass.
#[derive(Debug, Clone)]
pub struct EnvelopeDetector {
    sample_rate: f64,
    cutoff_hz: f64,
    taps: Vec<f64>,
}

impl EnvelopeDetector {
    /// Detector with the cutoff planned from the sweep and delay spread.
    pub fn for_sweep(p: &SweepParams, sample_rate: f64, max_delay_spread: f64) -> Result<Self> {
        let plan = CutoffPlan::for_sweep(p, max_delay_spread);
        plan.check()?;
        Self::with_cutoff(sample_rate, plan.cutoff_hz)
    }

    pub fn with_cutoff(sample_rate: f64, cutoff_hz: f64) -> Result<Self> {
        if !(cutoff_hz > 0.0 && cutoff_hz < sample_rate / 2.0) {
            return Err(Error::Configuration(format!(
                "cutoff {cutoff_hz} Hz must lie in (0, {}) Hz",
                sample_rate / 2.0
            )));
        }
        let half = (TAPS_PER_CUTOFF_PERIOD * sample_rate / cutoff_hz / 2.0).ceil() as usize;
        let len = 2 * half + 1;
        let fc = cutoff_hz / sample_rate;
        let mut taps: Vec<f64> = (0..len)
            .map(|n| {
                let k = n as f64 - half as f64;
                let sinc = if k == 0.0 {
                    2.0 * fc
                } else {
                    (2.0 * PI * fc * k).sin() / (PI * k)
                };
                sinc * blackman(n, len)
            })
            .collect();
        let sum: f64 = taps.iter().sum();
        taps.iter_mut().for_each(|t| *t /= sum);
        Ok(Self {
            sample_rate,
            cutoff_hz,
            taps,
        })
    }

    pub fn cutoff_hz(&self) -> f64 {
        self.cutoff_hz
    }

    pub fn filter_len(&self) -> usize {
        self.taps.len()
    }

    /// Half-width, in samples, of the forward-backward impulse response.
    /// Output samples farther than this from a disturbance are unaffected by it.
    pub fn settling_samples(&self) -> usize {
        self.taps.len() - 1
    }

    pub fn settling_time(&self) -> f64 {
        self.settling_samples() as f64 / self.sample_rate
    }

    /// Envelope of a real passband signal, aligned sample-for-sample with it.
    pub fn detect(&self, s: &SampledSignal) -> Result<SampledSignal> {
        if s.sample_rate() != self.sample_rate {
            return Err(Error::Dimension(format!(
                "detector built for {} Hz, signal at {} Hz",
                self.sample_rate,
                s.sample_rate()
            )));
        }
        if s.len() < self.taps.len() {
            return Err(Error::InsufficientData(format!(
                "{} samples is shorter than the {}-tap envelope filter",
                s.len(),
                self.taps.len()
            )));
        }
        let rectified: Vec<f64> = s.samples().iter().map(|x| x.abs()).collect();
        let forward = self.filter_same(&rectified);
        let mut reversed: Vec<f64> = forward.into_iter().rev().collect();
        reversed = self.filter_same(&reversed);
        // Mean of |cos| is 2/π.
        let env = reversed.into_iter().rev().map(|v| v * FRAC_PI_2).collect();
        s.with_samples(env)
    }

    fn filter_same(&self, x: &[f64]) -> Vec<f64> {
        let full = fft_convolve(x, &self.taps);
        let delay = (self.taps.len() - 1) / 2;
        full[delay..delay + x.len()].to_vec()
    }
}

fn blackman(n: usize, len: usize) -> f64 {
    let x = 2.0 * PI * n as f64 / (len - 1) as f64;
    0.42 - 0.5 * x.cos() + 0.08 * (2.0 * x).cos()
}

/// Envelope of `s` with the detector planned for `p` and `max_delay_spread`.
pub fn envelope_detect(
    s: &SampledSignal,
    p: &SweepParams,
    max_delay_spread: f64,
) -> Result<SampledSignal> {
    EnvelopeDetector::for_sweep(p, s.sample_rate(), max_delay_spread)?.detect(s)
}
