//! Independent reference computations used by the integration tests.
#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rustfft::FftPlanner;
use statrs::function::erf::erfc;

use bspsk_core::{sawtooth, SampledSignal, SweepParams};

/// `(1/T_c)·∫ x(t)·e^{−j2πnt/T_c} dt` over one period by composite Simpson
/// with `intervals` (even) panels.
pub fn fourier_coeff_numeric(n: i64, p: &SweepParams, intervals: usize) -> Complex64 {
    assert!(intervals.is_multiple_of(2));
    let half = p.period / 2.0;
    let h = p.period / intervals as f64;
    let w = TAU * n as f64 / p.period;
    // Stay inside the open period so the ramp's jump is not sampled.
    let f = |t: f64| {
        let x = p.ramp_slope * t;
        Complex64::from_polar(x, -w * t)
    };
    let mut acc = f(-half) + f(half - 1e-15 * p.period);
    for k in 1..intervals {
        let t = -half + k as f64 * h;
        acc += f(t) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * h / 3.0 / p.period
}

/// Mean power of the ramp by direct sampling.
pub fn ramp_power_numeric(p: &SweepParams, n: usize) -> f64 {
    (0..n)
        .map(|k| {
            let t = -p.period / 2.0 + (k as f64 + 0.5) * p.period / n as f64;
            sawtooth(t, p).powi(2)
        })
        .sum::<f64>()
        / n as f64
}

/// Gaussian tail probability.
pub fn q_function(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

/// Uncoded BPSK bit error probability.
pub fn bpsk_ber(ebn0_db: f64) -> f64 {
    q_function((2.0 * 10f64.powf(ebn0_db / 10.0)).sqrt())
}

/// `p ± z·σ` interval for a binomial proportion over `n` trials.
pub fn binomial_bounds(p: f64, n: u64, z: f64) -> (f64, f64) {
    let sigma = (p * (1.0 - p) / n as f64).sqrt();
    (p - z * sigma, p + z * sigma)
}

/// Ridge of a Hann-windowed STFT: `(frame centre time, peak frequency)` per
/// frame, peak refined by parabolic interpolation on log magnitude.
pub struct Ridge {
    pub times: Vec<f64>,
    pub freqs: Vec<f64>,
    pub bin_hz: f64,
}

pub fn stft_ridge(s: &SampledSignal, window: usize, hop: usize) -> Ridge {
    let fs = s.sample_rate();
    let x = s.samples();
    let fft = FftPlanner::<f64>::new().plan_fft_forward(window);
    let hann: Vec<f64> = (0..window)
        .map(|n| 0.5 - 0.5 * (TAU * n as f64 / window as f64).cos())
        .collect();
    let mut times = Vec::new();
    let mut freqs = Vec::new();
    let mut start = 0;
    while start + window <= x.len() {
        let mut buf: Vec<Complex64> = (0..window)
            .map(|n| Complex64::new(x[start + n] * hann[n], 0.0))
            .collect();
        fft.process(&mut buf);
        let mags: Vec<f64> = buf[..window / 2].iter().map(|c| c.norm()).collect();
        let k = (1..mags.len() - 1)
            .max_by(|&a, &b| mags[a].total_cmp(&mags[b]))
            .unwrap();
        let (a, b, c) = (mags[k - 1].ln(), mags[k].ln(), mags[k + 1].ln());
        let offset = 0.5 * (a - c) / (a - 2.0 * b + c);
        freqs.push((k as f64 + offset) * fs / window as f64);
        times.push(s.time_at(start) + (window as f64 - 1.0) / 2.0 / fs);
        start += hop;
    }
    Ridge {
        times,
        freqs,
        bin_hz: fs / window as f64,
    }
}

/// Least-squares line `y = a + b·x`; returns `(a, b)`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let b = sxy / sxx;
    (my - b * mx, b)
}

/// Troughs of `y(x)`: interior local minima among valid points that lie
/// below the mean valid level, refined by parabolic interpolation.
pub fn troughs(x: &[f64], y: &[f64], valid: &[bool]) -> Vec<f64> {
    let kept: Vec<f64> = y
        .iter()
        .zip(valid)
        .filter(|(_, &v)| v)
        .map(|(&y, _)| y)
        .collect();
    let level = kept.iter().sum::<f64>() / kept.len() as f64;
    (1..y.len() - 1)
        .filter(|&k| valid[k - 1] && valid[k] && valid[k + 1])
        .filter(|&k| y[k] < level && y[k] < y[k - 1] && y[k] <= y[k + 1])
        .map(|k| {
            let (a, b, c) = (y[k - 1], y[k], y[k + 1]);
            let denom = a - 2.0 * b + c;
            let offset = if denom > 0.0 {
                0.5 * (a - c) / denom
            } else {
                0.0
            };
            x[k] + offset * (x[k + 1] - x[k])
        })
        .collect()
}

/// Mean spacing between consecutive entries.
pub fn mean_spacing(v: &[f64]) -> f64 {
    (v[v.len() - 1] - v[0]) / (v.len() - 1) as f64
}

/// Kolmogorov-Smirnov statistic of samples against U(0, 1).
pub fn ks_uniform(mut u: Vec<f64>) -> f64 {
    u.sort_by(f64::total_cmp);
    let n = u.len() as f64;
    u.iter()
        .enumerate()
        .map(|(i, &v)| (v - i as f64 / n).abs().max(((i + 1) as f64 / n - v).abs()))
        .fold(0.0, f64::max)
}

/// Phase of a complex gain mapped to `[0, 1)`.
pub fn unit_phase(z: Complex64) -> f64 {
    (z.arg() + PI) / TAU
}
