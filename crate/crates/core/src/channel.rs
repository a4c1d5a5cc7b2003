//! Tapped-delay-line fading channel and additive noise.
//!
//! A realization is held fixed for one coherence interval. Tap delays must sit
//! on the sample grid; the ground-truth transfer function is then exact.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{domain, keyed_stream};
use crate::signal::{analytic_signal, FrequencyGrid, SampledSignal};

const GRID_TOL: f64 = 1e-6;

/// One entry of a power-delay profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TapSpec {
    pub delay_s: f64,
    /// Mean power relative to the first tap, dB.
    pub power_db: f64,
}

/// Power-delay profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TapProfile {
    pub taps: Vec<TapSpec>,
}

impl TapProfile {
    pub fn new(taps: Vec<TapSpec>) -> Result<Self> {
        let p = Self { taps };
        p.validate()?;
        Ok(p)
    }

    /// Single unit tap at zero delay.
    pub fn flat() -> Self {
        Self {
            taps: vec![TapSpec {
                delay_s: 0.0,
                power_db: 0.0,
            }],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let first = self
            .taps
            .first()
            .ok_or_else(|| Error::Configuration("tap profile is empty".into()))?;
        if first.delay_s != 0.0 {
            return Err(Error::Configuration(format!(
                "first tap must have zero delay, got {}",
                first.delay_s
            )));
        }
        for t in &self.taps {
            if !t.delay_s.is_finite() || !t.power_db.is_finite() {
                return Err(Error::Configuration(
                    "tap delay and power must be finite".into(),
                ));
            }
        }
        if let Some(w) = self.taps.windows(2).find(|w| w[1].delay_s <= w[0].delay_s) {
            return Err(Error::Configuration(format!(
                "tap delays must strictly increase ({} then {})",
                w[0].delay_s, w[1].delay_s
            )));
        }
        Ok(())
    }

    pub fn max_delay(&self) -> f64 {
        self.taps.last().map_or(0.0, |t| t.delay_s)
    }

    /// Checks that every delay is a whole number of samples at `sample_rate`.
    pub fn check_grid(&self, sample_rate: f64) -> Result<()> {
        for t in &self.taps {
            delay_in_samples(t.delay_s, sample_rate)?;
        }
        Ok(())
    }
}

pub(crate) fn delay_in_samples(delay_s: f64, sample_rate: f64) -> Result<usize> {
    let exact = delay_s * sample_rate;
    let n = exact.round();
    if (exact - n).abs() > GRID_TOL * n.max(1.0) {
        let hint = if delay_s > 0.0 {
            format!(
                "; use a sample rate that is a multiple of {} Hz, e.g. {} Hz",
                1.0 / delay_s,
                (sample_rate * delay_s).ceil() / delay_s
            )
        } else {
            String::new()
        };
        return Err(Error::Configuration(format!(
            "tap delay {delay_s} s is {exact} samples at {sample_rate} Hz{hint}"
        )));
    }
    Ok(n as usize)
}

/// How tap gains are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum FadingMode {
    /// Circularly-symmetric complex Gaussian gains.
    Rayleigh,
    /// Deterministic real gains `√(10^(dB/10))`.
    #[default]
    Fixed,
}

/// How a complex gain acts on a real passband waveform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum GainPath {
    /// Real gain `|g|·sgn(Re g)` applied directly to the passband samples.
    #[default]
    Real,
    /// Full complex gain applied to the analytic signal, real part kept.
    Analytic,
}

/// A realized tap of the channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tap {
    pub delay_s: f64,
    pub gain: Complex64,
}

/// One draw of the impulse response.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelRealization {
    pub taps: Vec<Tap>,
    pub seed_record: u64,
}

impl ChannelRealization {
    /// Gains as they act on the waveform under `path`.
    pub fn effective(&self, path: GainPath) -> ChannelRealization {
        let taps = match path {
            GainPath::Analytic => self.taps.clone(),
            GainPath::Real => self
                .taps
                .iter()
                .map(|t| {
                    let sign = if t.gain.re < 0.0 { -1.0 } else { 1.0 };
                    Tap {
                        delay_s: t.delay_s,
                        gain: Complex64::new(sign * t.gain.norm(), 0.0),
                    }
                })
                .collect(),
        };
        ChannelRealization {
            taps,
            seed_record: self.seed_record,
        }
    }

    pub fn max_delay(&self) -> f64 {
        self.taps.iter().map(|t| t.delay_s).fold(0.0, f64::max)
    }

    /// `H(f) = Σ g_k·e^{−j2πf·d_k}` at a single frequency.
    pub fn response_at(&self, f_hz: f64) -> Complex64 {
        self.taps
            .iter()
            .map(|t| t.gain * Complex64::from_polar(1.0, -std::f64::consts::TAU * f_hz * t.delay_s))
            .sum()
    }
}

/// Draws one realization; tap `k` uses the stream keyed by `(seed, k)`.
pub fn draw_realization(profile: &TapProfile, seed: u64, mode: FadingMode) -> ChannelRealization {
    let taps = profile
        .taps
        .iter()
        .enumerate()
        .map(|(k, spec)| {
            let power = 10f64.powf(spec.power_db / 10.0);
            let gain = match mode {
                FadingMode::Fixed => Complex64::new(power.sqrt(), 0.0),
                FadingMode::Rayleigh => {
                    let mut rng = keyed_stream(seed, [domain::CHANNEL, k as u64, 0]);
                    let sigma = (power / 2.0).sqrt();
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    Complex64::new(sigma * re, sigma * im)
                }
            };
            Tap {
                delay_s: spec.delay_s,
                gain,
            }
        })
        .collect();
    ChannelRealization {
        taps,
        seed_record: seed,
    }
}

/// Channel frequency response on `grid`.
pub fn transfer_function(ch: &ChannelRealization, grid: &FrequencyGrid) -> Vec<Complex64> {
    grid.frequencies().map(|f| ch.response_at(f)).collect()
}

/// Passes a real passband signal through the channel.
///
/// The output is longer than the input by the largest delay, in samples.
pub fn apply_channel(
    s: &SampledSignal,
    ch: &ChannelRealization,
    path: GainPath,
) -> Result<SampledSignal> {
    let fs = s.sample_rate();
    let delays = ch
        .taps
        .iter()
        .map(|t| delay_in_samples(t.delay_s, fs))
        .collect::<Result<Vec<_>>>()?;
    let max_d = delays.iter().copied().max().unwrap_or(0);
    let out_len = s.len() + max_d;
    let mut out = vec![0.0; out_len];
    match path {
        GainPath::Real => {
            let eff = ch.effective(GainPath::Real);
            for (tap, &d) in eff.taps.iter().zip(&delays) {
                let g = tap.gain.re;
                for (o, &x) in out[d..].iter_mut().zip(s.samples()) {
                    *o += g * x;
                }
            }
        }
        GainPath::Analytic => {
            let mut padded = s.samples().to_vec();
            padded.resize(out_len, 0.0);
            let z = analytic_signal(&padded);
            for (tap, &d) in ch.taps.iter().zip(&delays) {
                for (o, x) in out[d..].iter_mut().zip(&z) {
                    *o += (tap.gain * x).re;
                }
            }
        }
    }
    SampledSignal::new(out, fs, s.t0())
}

/// Adds white Gaussian noise at `snr_db` relative to the signal's mean
/// power. An infinite SNR returns the input unchanged.
pub fn add_awgn(s: &SampledSignal, snr_db: f64, seed: u64) -> Result<SampledSignal> {
    if snr_db == f64::INFINITY {
        return Ok(s.clone());
    }
    if snr_db.is_nan() {
        return Err(Error::Domain("SNR is NaN".into()));
    }
    let power = s.mean_power();
    if !(power > 0.0) {
        return Err(Error::Domain(
            "cannot set an SNR on a zero-power signal".into(),
        ));
    }
    let sigma = (power / 10f64.powf(snr_db / 10.0)).sqrt();
    let mut rng = keyed_stream(seed, [domain::NOISE_DATA, 0, 0]);
    let noisy = s
        .samples()
        .iter()
        .map(|&x| {
            let n: f64 = rng.sample(StandardNormal);
            x + sigma * n
        })
        .collect();
    s.with_samples(noisy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn two_tap() -> TapProfile {
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
        .unwrap()
    }

    #[test]
    fn fixed_two_tap_gains() {
        let ch = draw_realization(&two_tap(), 0, FadingMode::Fixed);
        assert_eq!(ch.taps[0].gain, Complex64::new(1.0, 0.0));
        assert!((ch.taps[1].gain.re - 0.630_957).abs() < 1e-6);
        assert_eq!(ch.taps[1].gain.im, 0.0);
    }

    #[test]
    fn rayleigh_is_deterministic_per_seed() {
        let a = draw_realization(&two_tap(), 99, FadingMode::Rayleigh);
        let b = draw_realization(&two_tap(), 99, FadingMode::Rayleigh);
        let c = draw_realization(&two_tap(), 100, FadingMode::Rayleigh);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn profile_validation() {
        assert!(TapProfile::new(vec![]).is_err());
        let late_first = vec![TapSpec {
            delay_s: 1e-6,
            power_db: 0.0,
        }];
        assert!(TapProfile::new(late_first).is_err());
        let unordered = vec![
            TapSpec {
                delay_s: 0.0,
                power_db: 0.0,
            },
            TapSpec {
                delay_s: 0.0,
                power_db: -3.0,
            },
        ];
        assert!(TapProfile::new(unordered).is_err());
    }

    #[test]
    fn single_tap_is_flat() {
        let ch = draw_realization(&TapProfile::flat(), 0, FadingMode::Fixed);
        let grid = FrequencyGrid::new(0.0, 1e5, 50).unwrap();
        for h in transfer_function(&ch, &grid) {
            assert!((h - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn two_tap_extremes_and_period() {
        let ch = draw_realization(&two_tap(), 0, FadingMode::Fixed);
        let g = 10f64.powf(-4.0 / 20.0);
        // Oracle: |1 + g·e^{−j2πfτ}| at f = 0 and f = 1/(2τ).
        assert!((ch.response_at(0.0).norm() - (1.0 + g)).abs() < 1e-12);
        assert!((ch.response_at(500e3).norm() - (1.0 - g)).abs() < 1e-9);
        assert!((ch.response_at(0.0).norm() - 1.6310).abs() < 1e-4);
        assert!((ch.response_at(500e3).norm() - 0.3690).abs() < 1e-4);
        let grid = FrequencyGrid::new(0.0, 1e3, 1000).unwrap();
        let shifted = FrequencyGrid::new(1e6, 1e3, 1000).unwrap();
        let a = transfer_function(&ch, &grid);
        let b = transfer_function(&ch, &shifted);
        let worst = a
            .iter()
            .zip(&b)
            .map(|(x, y)| (x.norm() - y.norm()).abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-9);
    }

    #[test]
    fn identity_channel_passes_through() {
        let s = SampledSignal::from_fn(100, 1e3, 0.0, |t| (TAU * 10.0 * t).sin()).unwrap();
        let ch = draw_realization(&TapProfile::flat(), 0, FadingMode::Fixed);
        for path in [GainPath::Real, GainPath::Analytic] {
            let y = apply_channel(&s, &ch, path).unwrap();
            assert_eq!(y.len(), s.len());
            for (a, b) in y.samples().iter().zip(s.samples()) {
                assert!((a - b).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn tone_gain_matches_transfer_function() {
        let fs = 100e6;
        let ch = draw_realization(&two_tap(), 0, FadingMode::Fixed);
        for f in [2.0e6, 2.25e6, 2.5e6, 3.1e6] {
            let n = 20_000;
            let s = SampledSignal::from_fn(n, fs, 0.0, |t| (TAU * f * t).cos()).unwrap();
            let y = apply_channel(&s, &ch, GainPath::Real).unwrap();
            let steady = &y.samples()[200..n];
            let peak = steady.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let expect = ch.response_at(f).norm();
            assert!(
                (peak - expect).abs() < 0.005 * expect,
                "f={f}: {peak} vs {expect}"
            );
        }
    }

    #[test]
    fn complex_gain_on_analytic_path() {
        let fs = 1e6;
        let f = 50e3;
        let g = Complex64::from_polar(0.8, 0.7);
        let ch = ChannelRealization {
            taps: vec![Tap {
                delay_s: 0.0,
                gain: g,
            }],
            seed_record: 0,
        };
        // 50 whole cycles, so the FFT-based Hilbert transform is exact.
        let s = SampledSignal::from_fn(1000, fs, 0.0, |t| (TAU * f * t).cos()).unwrap();
        let y = apply_channel(&s, &ch, GainPath::Analytic).unwrap();
        for (n, v) in y.samples().iter().enumerate() {
            let t = n as f64 / fs;
            assert!((v - 0.8 * (TAU * f * t + 0.7).cos()).abs() < 1e-9);
        }
    }

    #[test]
    fn off_grid_delay_names_rate() {
        let profile = TapProfile::new(vec![
            TapSpec {
                delay_s: 0.0,
                power_db: 0.0,
            },
            TapSpec {
                delay_s: 1.5e-7,
                power_db: -3.0,
            },
        ])
        .unwrap();
        let ch = draw_realization(&profile, 0, FadingMode::Fixed);
        let s = SampledSignal::new(vec![1.0; 10], 1e6, 0.0).unwrap();
        match apply_channel(&s, &ch, GainPath::Real) {
            Err(Error::Configuration(msg)) => assert!(msg.contains("sample rate")),
            other => panic!("expected configuration error, got {other:?}"),
        }
    }

    #[test]
    fn awgn_examples() {
        let s = SampledSignal::from_fn(1_000_000, 1e6, 0.0, |t| (TAU * 1e3 * t).cos()).unwrap();
        assert_eq!(add_awgn(&s, f64::INFINITY, 1).unwrap(), s);
        let y = add_awgn(&s, 0.0, 1).unwrap();
        let noise_power = y
            .samples()
            .iter()
            .zip(s.samples())
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            / s.len() as f64;
        assert!((noise_power / s.mean_power() - 1.0).abs() < 0.02);
        assert_eq!(add_awgn(&s, 3.0, 5).unwrap(), add_awgn(&s, 3.0, 5).unwrap());
        let z = SampledSignal::new(vec![0.0; 8], 1.0, 0.0).unwrap();
        assert!(matches!(add_awgn(&z, 10.0, 0), Err(Error::Domain(_))));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn channel_is_linear(
                a in proptest::collection::vec(-1.0f64..1.0, 200),
                b in proptest::collection::vec(-1.0f64..1.0, 200),
                alpha in -3.0f64..3.0, beta in -3.0f64..3.0, seed in any::<u64>(),
            ) {
                let fs = 10e6;
                let ch = draw_realization(&two_tap(), seed, FadingMode::Rayleigh);
                let sig = |v: Vec<f64>| SampledSignal::new(v, fs, 0.0).unwrap();
                let mix = sig(a.iter().zip(&b).map(|(x, y)| alpha * x + beta * y).collect());
                let ya = apply_channel(&sig(a), &ch, GainPath::Real).unwrap();
                let yb = apply_channel(&sig(b), &ch, GainPath::Real).unwrap();
                let ym = apply_channel(&mix, &ch, GainPath::Real).unwrap();
                for i in 0..ym.len() {
                    let lin = alpha * ya.samples()[i] + beta * yb.samples()[i];
                    prop_assert!((ym.samples()[i] - lin).abs() < 1e-12);
                }
            }
        }
    }
}
