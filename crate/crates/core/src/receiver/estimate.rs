//! Mapping the received envelope onto the swept band, and tap extraction.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::channel::ChannelRealization;
use crate::error::{Error, Result};
use crate::signal::{FrequencyGrid, SampledSignal};
use crate::sweep::SweepParams;

/// Smallest fraction of valid grid points an estimate may carry.
pub const MIN_VALID_FRACTION: f64 = 0.5;

/// Closed time interval `[start, end]`, seconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeInterval {
    pub start: f64,
    pub end: f64,
}

impl TimeInterval {
    pub fn new(start: f64, end: f64) -> Self {
        Self { start, end }
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.start && t <= self.end
    }
}

/// Estimated `|H(f)|` across the swept band.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransferEstimate {
    pub grid: FrequencyGrid,
    pub magnitude: Vec<f64>,
    pub valid_mask: Vec<bool>,
    /// Scale applied to the raw envelope (reciprocal of the reference amplitude).
    pub norm_factor: f64,
}

impl TransferEstimate {
    pub fn new(
        grid: FrequencyGrid,
        magnitude: Vec<f64>,
        valid_mask: Vec<bool>,
        norm_factor: f64,
    ) -> Result<Self> {
        if magnitude.len() != grid.n_points || valid_mask.len() != grid.n_points {
            return Err(Error::Dimension(format!(
                "grid has {} points, magnitude {}, mask {}",
                grid.n_points,
                magnitude.len(),
                valid_mask.len()
            )));
        }
        if magnitude.iter().any(|m| !m.is_finite() || *m < 0.0) {
            return Err(Error::Domain(
                "magnitudes must be finite and non-negative".into(),
            ));
        }
        Ok(Self {
            grid,
            magnitude,
            valid_mask,
            norm_factor,
        })
    }

    /// Ground truth `|H|` of a realization on the swept band (all points valid).
    pub fn from_channel(ch: &ChannelRealization, p: &SweepParams, n_points: usize) -> Result<Self> {
        let grid = FrequencyGrid::spanning(p.f_min_hz(), p.f_max_hz(), n_points)?;
        let magnitude = grid
            .frequencies()
            .map(|f| ch.response_at(f).norm())
            .collect();
        Self::new(grid, magnitude, vec![true; n_points], 1.0)
    }

    pub fn valid_fraction(&self) -> f64 {
        self.valid_mask.iter().filter(|&&v| v).count() as f64 / self.valid_mask.len() as f64
    }

    /// Largest magnitude over valid points.
    pub fn peak(&self) -> f64 {
        self.magnitude
            .iter()
            .zip(&self.valid_mask)
            .filter(|(_, &v)| v)
            .map(|(m, _)| *m)
            .fold(0.0, f64::max)
    }

    /// Magnitudes with invalid points filled by linear interpolation between
    /// the nearest valid neighbours (nearest value beyond the ends).
    pub fn filled(&self) -> Result<Vec<f64>> {
        if self.valid_fraction() < MIN_VALID_FRACTION {
            return Err(Error::InsufficientData(format!(
                "only {:.1}% of the estimate is valid",
                100.0 * self.valid_fraction()
            )));
        }
        let valid: Vec<usize> = (0..self.magnitude.len())
            .filter(|&i| self.valid_mask[i])
            .collect();
        let mut out = self.magnitude.clone();
        for (i, slot) in out.iter_mut().enumerate() {
            if self.valid_mask[i] {
                continue;
            }
            let right = valid.partition_point(|&v| v < i);
            *slot = match (right.checked_sub(1).map(|l| valid[l]), valid.get(right)) {
                (Some(l), Some(&r)) => {
                    let w = (i - l) as f64 / (r - l) as f64;
                    self.magnitude[l] * (1.0 - w) + self.magnitude[r] * w
                }
                (Some(l), None) => self.magnitude[l],
                (None, Some(&r)) => self.magnitude[r],
                (None, None) => unreachable!("valid fraction checked above"),
            };
        }
        Ok(out)
    }

    /// Linearly interpolated value of `filled` at `f_hz`, clamped to the band.
    pub fn interpolate(filled: &[f64], grid: &FrequencyGrid, f_hz: f64) -> f64 {
        let x = ((f_hz - grid.f_start) / grid.f_step).clamp(0.0, (grid.n_points - 1) as f64);
        let i = (x.floor() as usize).min(grid.n_points - 2);
        let w = x - i as f64;
        filled[i] * (1.0 - w) + filled[i + 1] * w
    }
}

/// Maps one sweep of envelope onto the band grid.
///
/// Sample time `t` maps to `f(t) = (ω_c + K_f·K·t')/2π`. Magnitudes are
/// divided by `reference_amplitude`, the known transmit envelope. Grid
/// points whose neighbouring envelope samples fall inside any
/// `transient_mask` interval are marked invalid.
pub fn envelope_to_transfer(
    env: &SampledSignal,
    p: &SweepParams,
    reference_amplitude: f64,
    transient_mask: &[TimeInterval],
    n_points: usize,
) -> Result<TransferEstimate> {
    let fs = env.sample_rate();
    let expected = (p.period * fs).round() as usize;
    if env.len() != expected {
        return Err(Error::Framing(format!(
            "envelope holds {} samples; one sweep is {expected}",
            env.len()
        )));
    }
    if (p.wrap(env.t0()) + p.period / 2.0).abs() > 0.5 / fs {
        return Err(Error::Framing(format!(
            "envelope starts at {} s, not at a sweep edge",
            env.t0()
        )));
    }
    if !(reference_amplitude > 0.0) {
        return Err(Error::Domain(format!(
            "reference amplitude must be positive, got {reference_amplitude}"
        )));
    }
    let rate = p.sweep_rate();
    if !(rate > 0.0) {
        return Err(Error::Domain(
            "an unswept carrier does not scan the band".into(),
        ));
    }

    let sample_valid: Vec<bool> = (0..env.len())
        .map(|n| {
            let t = env.time_at(n);
            !transient_mask.iter().any(|iv| iv.contains(t))
        })
        .collect();

    let grid = FrequencyGrid::spanning(p.f_min_hz(), p.f_max_hz(), n_points)?;
    let norm_factor = 1.0 / reference_amplitude;
    let last = env.len() - 1;
    let mut magnitude = Vec::with_capacity(n_points);
    let mut valid_mask = Vec::with_capacity(n_points);
    for f in grid.frequencies() {
        let t_local = TAU * f / rate - p.omega_c / rate;
        let x = ((t_local + p.period / 2.0) * fs).clamp(0.0, last as f64);
        let n0 = (x.floor() as usize).min(last);
        let n1 = (n0 + 1).min(last);
        let w = x - n0 as f64;
        let v = env.samples()[n0] * (1.0 - w) + env.samples()[n1] * w;
        magnitude.push((v * norm_factor).max(0.0));
        valid_mask.push(sample_valid[n0] && sample_valid[n1]);
    }
    let est = TransferEstimate::new(grid, magnitude, valid_mask, norm_factor)?;
    if est.valid_fraction() < MIN_VALID_FRACTION {
        return Err(Error::InsufficientData(format!(
            "masking left {:.1}% of the band valid",
            100.0 * est.valid_fraction()
        )));
    }
    Ok(est)
}

/// Tap magnitudes recovered from `|H|` by an inverse DFT across the band.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TapEstimate {
    /// One-sided delay grid, spacing `1/B_Hz`.
    pub delays: Vec<f64>,
    /// One-sided gains: the two-sided sequence folded onto non-negative delays.
    pub gains: Vec<f64>,
    /// Raw `|IDFT|` over all `N` bins; `Σ two_sided² = mean(|H|²)`.
    pub two_sided: Vec<f64>,
}

impl TapEstimate {
    /// Indices of the `count` largest one-sided gains, in delay order.
    pub fn dominant(&self, count: usize) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.gains.len()).collect();
        idx.sort_by(|&a, &b| self.gains[b].total_cmp(&self.gains[a]).then(a.cmp(&b)));
        idx.truncate(count);
        idx.sort_unstable();
        idx
    }
}

/// Inverse DFT of the (filled) magnitude estimate.
///
/// The closing grid point duplicates the first period boundary and is
/// dropped, leaving `N = n_points − 1` samples spaced `B_Hz/N`, so delays
/// land on multiples of `1/B_Hz`. A real magnitude spectrum has a
/// symmetric delay response; bins `k` and `N − k` are folded together.
pub fn estimate_taps(h: &TransferEstimate) -> Result<TapEstimate> {
    let filled = h.filled()?;
    let n = filled.len() - 1;
    let mut buf: Vec<Complex64> = filled[..n]
        .iter()
        .map(|&m| Complex64::new(m, 0.0))
        .collect();
    FftPlanner::<f64>::new()
        .plan_fft_inverse(n)
        .process(&mut buf);
    let two_sided: Vec<f64> = buf.iter().map(|c| c.norm() / n as f64).collect();

    let half = n / 2;
    let gains: Vec<f64> = (0..=half)
        .map(|k| {
            if k == 0 || (n % 2 == 0 && k == half) {
                two_sided[k]
            } else {
                two_sided[k] + two_sided[n - k]
            }
        })
        .collect();
    let spacing = 1.0 / (n as f64 * h.grid.f_step);
    let delays = (0..gains.len()).map(|k| k as f64 * spacing).collect();
    Ok(TapEstimate {
        delays,
        gains,
        two_sided,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{draw_realization, FadingMode, TapProfile, TapSpec};

    fn band() -> SweepParams {
        SweepParams::new(TAU * 10e6, 1000.0, TAU * 4e6, 1e-3).unwrap()
    }

    fn two_tap_truth(n_points: usize) -> TransferEstimate {
        let profile = TapProfile::new(vec![
            TapSpec {
                delay_s: 0.0,
                power_db: 0.0,
            },
            TapSpec {
                delay_s: 1e-6,
                power_db: -4.0,
            },
        ])
        .unwrap();
        let ch = draw_realization(&profile, 0, FadingMode::Fixed);
        TransferEstimate::from_channel(&ch, &band(), n_points).unwrap()
    }

    #[test]
    fn flat_magnitude_gives_single_tap() {
        let grid = FrequencyGrid::spanning(8e6, 12e6, 257).unwrap();
        let h = TransferEstimate::new(grid, vec![1.0; 257], vec![true; 257], 1.0).unwrap();
        let taps = estimate_taps(&h).unwrap();
        assert!((taps.gains[0] - 1.0).abs() < 1e-12);
        assert!(taps.gains[1..].iter().all(|&g| g < 0.01));
        assert!((taps.delays[1] - 0.25e-6).abs() < 1e-15);
    }

    #[test]
    fn two_tap_magnitude_locates_delay() {
        let taps = estimate_taps(&two_tap_truth(513)).unwrap();
        assert_eq!(taps.dominant(2), vec![0, 4]);
        assert!((taps.delays[4] - 1e-6).abs() < 1e-15);
        let ratio = taps.gains[4] / taps.gains[0];
        let g = 10f64.powf(-0.2);
        assert!((ratio - g).abs() < 0.15 * g, "ratio {ratio}");
    }

    #[test]
    fn two_sided_sequence_conserves_energy() {
        let h = two_tap_truth(513);
        let taps = estimate_taps(&h).unwrap();
        let e_taps: f64 = taps.two_sided.iter().map(|g| g * g).sum();
        let n = h.magnitude.len() - 1;
        let e_mag = h.magnitude[..n].iter().map(|m| m * m).sum::<f64>() / n as f64;
        assert!((e_taps - e_mag).abs() < 0.01 * e_mag);
    }

    #[test]
    fn fill_interpolates_gaps() {
        let grid = FrequencyGrid::new(0.0, 1.0, 6).unwrap();
        let h = TransferEstimate::new(
            grid,
            vec![9.0, 1.0, 9.0, 3.0, 9.0, 9.0],
            vec![false, true, false, true, true, false],
            1.0,
        )
        .unwrap();
        assert_eq!(h.filled().unwrap(), vec![1.0, 1.0, 2.0, 3.0, 9.0, 9.0]);
    }

    #[test]
    fn too_few_valid_points() {
        let grid = FrequencyGrid::new(0.0, 1.0, 4).unwrap();
        let h = TransferEstimate::new(grid, vec![1.0; 4], vec![true, false, false, false], 1.0)
            .unwrap();
        assert!(matches!(estimate_taps(&h), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn wrong_duration_is_framing_error() {
        let p = band();
        let env = SampledSignal::new(vec![1.0; 1000], 100e6, -p.period / 2.0).unwrap();
        assert!(matches!(
            envelope_to_transfer(&env, &p, 1.0, &[], 65),
            Err(Error::Framing(_))
        ));
    }

    #[test]
    fn frequency_mapping_is_linear_in_time() {
        // Envelope equal to its own local time maps to a straight line in f.
        let p = SweepParams::new(TAU * 1e5, 1.0, TAU * 4e4, 1e-3).unwrap();
        let fs = 1e6;
        let env = SampledSignal::from_fn(1000, fs, -p.period / 2.0, |t| t + 1.0).unwrap();
        let est = envelope_to_transfer(&env, &p, 1.0, &[], 11).unwrap();
        for (i, f) in est.grid.frequencies().enumerate().take(10) {
            let t = (f - p.carrier_hz()) * TAU / p.sweep_rate();
            assert!((est.magnitude[i] - (t + 1.0)).abs() < 1e-9);
        }
    }
}
