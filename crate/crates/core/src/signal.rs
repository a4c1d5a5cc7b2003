//! Sampled waveforms and the numeric kernels shared by every stage.
//!
//! All integrals are rectangle-rule sums scaled by the sample period. The
//! waveforms handled here are oversampled real passband signals, so the
//! rectangle rule is exact enough and keeps inner products exactly bilinear.

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Scalar sample type of a [`SampledSignal`].
pub trait Sample: Copy + Send + Sync + 'static {
    fn norm_sqr(self) -> f64;
    fn is_finite(self) -> bool;
}

impl Sample for f64 {
    fn norm_sqr(self) -> f64 {
        self * self
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
}

impl Sample for Complex64 {
    fn norm_sqr(self) -> f64 {
        Complex64::norm_sqr(&self)
    }
    fn is_finite(self) -> bool {
        Complex64::is_finite(self)
    }
}

/// A uniformly sampled waveform.
///
/// Sample `n` sits at time `t0 + n / sample_rate`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal<T = f64> {
    samples: Vec<T>,
    sample_rate: f64,
    t0: f64,
}

impl<T: Sample> SampledSignal<T> {
    pub fn new(samples: Vec<T>, sample_rate: f64, t0: f64) -> Result<Self> {
        if !(sample_rate.is_finite() && sample_rate > 0.0) {
            return Err(Error::Configuration(format!(
                "sample rate must be positive and finite, got {sample_rate}"
            )));
        }
        if !t0.is_finite() {
            return Err(Error::Configuration(format!(
                "start time must be finite, got {t0}"
            )));
        }
        if let Some(n) = samples.iter().position(|s| !s.is_finite()) {
            return Err(Error::Domain(format!("sample {n} is not finite")));
        }
        Ok(Self {
            samples,
            sample_rate,
            t0,
        })
    }

    /// Builds a signal by evaluating `f` at each sample instant.
    pub fn from_fn(
        n_samples: usize,
        sample_rate: f64,
        t0: f64,
        f: impl Fn(f64) -> T,
    ) -> Result<Self> {
        let samples = (0..n_samples)
            .map(|n| f(t0 + n as f64 / sample_rate))
            .collect();
        Self::new(samples, sample_rate, t0)
    }

    /// Same time axis, new samples.
    pub fn with_samples(&self, samples: Vec<T>) -> Result<Self> {
        Self::new(samples, self.sample_rate, self.t0)
    }

    pub fn samples(&self) -> &[T] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<T> {
        self.samples
    }

    pub fn sample_rate(&self) -> f64 {
        self.sample_rate
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate
    }

    pub fn time_at(&self, n: usize) -> f64 {
        self.t0 + n as f64 / self.sample_rate
    }

    /// Mean of |x|² over the samples.
    pub fn mean_power(&self) -> f64 {
        if self.samples.is_empty() {
            return 0.0;
        }
        self.samples.iter().map(|s| s.norm_sqr()).sum::<f64>() / self.samples.len() as f64
    }

    /// Sub-range `[start, start + len)` with its time axis preserved.
    pub fn slice(&self, start: usize, len: usize) -> Result<Self> {
        let end = start
            .checked_add(len)
            .filter(|&e| e <= self.samples.len())
            .ok_or_else(|| {
                Error::Framing(format!(
                    "slice {start}..{} exceeds signal length {}",
                    start.saturating_add(len),
                    self.samples.len()
                ))
            })?;
        Ok(Self {
            samples: self.samples[start..end].to_vec(),
            sample_rate: self.sample_rate,
            t0: self.time_at(start),
        })
    }

    fn ensure_nonempty(&self, what: &str) -> Result<()> {
        if self.samples.is_empty() {
            Err(Error::InsufficientData(format!("{what}: empty signal")))
        } else {
            Ok(())
        }
    }
}

/// A uniform frequency axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequencyGrid {
    pub f_start: f64,
    pub f_step: f64,
    pub n_points: usize,
}

impl FrequencyGrid {
    pub fn new(f_start: f64, f_step: f64, n_points: usize) -> Result<Self> {
        if !(f_step.is_finite() && f_step > 0.0) || !f_start.is_finite() {
            return Err(Error::Configuration(format!(
                "frequency grid needs a finite start and positive step, got start {f_start}, step {f_step}"
            )));
        }
        if n_points < 2 {
            return Err(Error::Configuration(format!(
                "frequency grid needs at least 2 points, got {n_points}"
            )));
        }
        Ok(Self {
            f_start,
            f_step,
            n_points,
        })
    }

    /// Grid with `n_points` covering `[f_lo, f_hi]` inclusive.
    pub fn spanning(f_lo: f64, f_hi: f64, n_points: usize) -> Result<Self> {
        if n_points < 2 || !(f_hi > f_lo) {
            return Err(Error::Configuration(format!(
                "cannot span [{f_lo}, {f_hi}] with {n_points} points"
            )));
        }
        Self::new(f_lo, (f_hi - f_lo) / (n_points - 1) as f64, n_points)
    }

    pub fn frequency(&self, i: usize) -> f64 {
        self.f_start + i as f64 * self.f_step
    }

    pub fn f_end(&self) -> f64 {
        self.frequency(self.n_points - 1)
    }

    pub fn frequencies(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(|i| self.frequency(i))
    }
}

fn check_same_axis<T: Sample, U: Sample>(a: &SampledSignal<T>, b: &SampledSignal<U>) -> Result<()> {
    if a.sample_rate != b.sample_rate {
        return Err(Error::Dimension(format!(
            "sample rates differ: {} vs {}",
            a.sample_rate, b.sample_rate
        )));
    }
    if a.len() != b.len() {
        return Err(Error::Dimension(format!(
            "lengths differ: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    if (a.t0 - b.t0).abs() > 1e-6 / a.sample_rate {
        return Err(Error::Dimension(format!(
            "start times differ: {} vs {}",
            a.t0, b.t0
        )));
    }
    Ok(())
}

/// Rectangle-rule integral of `a(t)·b(t)` over the common support.
pub fn inner_product(a: &SampledSignal, b: &SampledSignal) -> Result<f64> {
    check_same_axis(a, b)?;
    a.ensure_nonempty("inner product")?;
    Ok(dot(&a.samples, &b.samples) / a.sample_rate)
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Squared norm `∫|s(t)|² dt` (conjugate inner product for complex signals).
pub fn energy<T: Sample>(s: &SampledSignal<T>) -> Result<f64> {
    s.ensure_nonempty("energy")?;
    Ok(s.samples.iter().map(|x| x.norm_sqr()).sum::<f64>() / s.sample_rate)
}

/// One-sided DTFT magnitude of a real signal at each grid frequency.
///
/// Normalised by the sample count, so a unit cosine with an integer number
/// of cycles in the window reads 0.5 at its own frequency. Each point is a
/// Goertzel recursion; grid points need not be FFT-bin aligned.
pub fn dft_magnitude(s: &SampledSignal, grid: &FrequencyGrid) -> Result<Vec<f64>> {
    s.ensure_nonempty("dft magnitude")?;
    let nyquist = s.sample_rate / 2.0;
    if grid.f_start < 0.0 || grid.f_end() >= nyquist {
        return Err(Error::Range(format!(
            "grid [{}, {}] Hz must lie within [0, {nyquist}) Hz",
            grid.f_start,
            grid.f_end()
        )));
    }
    let n = s.len() as f64;
    Ok(grid
        .frequencies()
        .map(|f| goertzel(&s.samples, f / s.sample_rate) / n)
        .collect())
}

/// |Σ x[n]·e^{-j2πνn}| for normalised frequency `nu` (cycles/sample).
pub(crate) fn goertzel(x: &[f64], nu: f64) -> f64 {
    let w = std::f64::consts::TAU * nu;
    let coeff = 2.0 * w.cos();
    let (mut s1, mut s2) = (0.0f64, 0.0f64);
    for &v in x {
        let s0 = v + coeff * s1 - s2;
        s2 = s1;
        s1 = s0;
    }
    (s1 * s1 + s2 * s2 - coeff * s1 * s2).max(0.0).sqrt()
}

/// Full linear convolution of `a` and `b` via zero-padded FFTs.
pub fn fft_convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let out_len = a.len() + b.len() - 1;
    let n = out_len.next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(n);

    let mut fa: Vec<Complex64> = padded(a, n);
    let mut fb: Vec<Complex64> = padded(b, n);
    fwd.process(&mut fa);
    fwd.process(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    inv.process(&mut fa);
    let scale = 1.0 / n as f64;
    fa[..out_len].iter().map(|c| c.re * scale).collect()
}

/// Analytic signal `x + j·hilbert(x)` computed in the frequency domain.
pub fn analytic_signal(x: &[f64]) -> Vec<Complex64> {
    let n = x.len();
    if n == 0 {
        return Vec::new();
    }
    let mut planner = FftPlanner::<f64>::new();
    let mut buf = padded(x, n);
    planner.plan_fft_forward(n).process(&mut buf);
    // Keep DC (and Nyquist for even n), double positive bins, zero negatives.
    let half = n / 2;
    for (k, v) in buf.iter_mut().enumerate() {
        let weight = if k == 0 || (n.is_multiple_of(2) && k == half) {
            1.0
        } else if k <= (n - 1) / 2 {
            2.0
        } else {
            0.0
        };
        *v *= weight;
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    buf.iter().map(|c| c * scale).collect()
}

fn padded(x: &[f64], n: usize) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = x.iter().map(|&r| Complex64::new(r, 0.0)).collect();
    v.resize(n, Complex64::new(0.0, 0.0));
    v
}
