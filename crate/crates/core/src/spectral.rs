//! Line spectrum of the swept carrier.
//!
//! The ramp is expanded in its exponential Fourier series and the carrier is
//! approximated to first order in the phase deviation (narrowband FM) keeping
//! only the fundamental ramp harmonic. The result is a six-line two-sided
//! spectrum: the carrier pair and one sideband pair on each side at
//! `f_c ± 1/T_c`. [`validate_spectrum`] measures those lines on a synthesised
//! carrier.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signal::{dft_magnitude, FrequencyGrid};
use crate::sweep::{sounding_sweep, SweepParams};

/// Largest modulation index for which the first-order expansion is used.
pub const NBFM_INDEX_LIMIT: f64 = 0.25;

/// Minimum number of sweep periods in a spectrum validation window.
pub const MIN_VALIDATION_PERIODS: usize = 8;

/// One delta of a two-sided line spectrum: `amplitude·e^{j2πft}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumLine {
    pub frequency_hz: f64,
    pub amplitude: Complex64,
}

/// Ramp Fourier coefficients `F_n` for `0 < |n| ≤ n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierCoefficientSet {
    pub coefficients: BTreeMap<i64, Complex64>,
}

impl FourierCoefficientSet {
    pub fn for_sweep(p: &SweepParams, n_max: u32) -> Self {
        let n_max = i64::from(n_max);
        let coefficients = (-n_max..=n_max)
            .filter(|&n| n != 0)
            .map(|n| (n, coefficient(n, p)))
            .collect();
        Self { coefficients }
    }

    /// `Σ|F_n|²`, the ramp's mean power captured by the retained harmonics.
    pub fn power(&self) -> f64 {
        self.coefficients.values().map(|c| c.norm_sqr()).sum()
    }
}

fn coefficient(n: i64, p: &SweepParams) -> Complex64 {
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    Complex64::new(0.0, p.ramp_slope * p.period * sign / (TAU * n as f64))
}

/// `F_n = j·K·T_c·(−1)ⁿ / (2πn)`.
pub fn sawtooth_fourier_coeff(n: i64, p: &SweepParams) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::Domain(
            "the ramp has zero mean; F_0 is not part of the series".into(),
        ));
    }
    Ok(coefficient(n, p))
}

/// Partial Fourier sum of the ramp over `0 < |n| ≤ n_terms`.
pub fn sawtooth_synthesis(t: f64, p: &SweepParams, n_terms: u32) -> f64 {
    // Pairs n and −n combine to 2·Re{F_n e^{jnωt}} = −2·Im{F_n}·sin(nωt).
    let w = TAU * t / p.period;
    (1..=i64::from(n_terms))
        .map(|n| -2.0 * coefficient(n, p).im * (n as f64 * w).sin())
        .sum()
}

/// Six-line narrowband-FM spectrum, rejecting modulation indices above
/// [`NBFM_INDEX_LIMIT`].
pub fn nbfm_line_spectrum(p: &SweepParams) -> Result<Vec<SpectrumLine>> {
    let mu = p.modulation_index();
    if mu > NBFM_INDEX_LIMIT {
        return Err(Error::ApproximationDomain {
            mu,
            limit: NBFM_INDEX_LIMIT,
        });
    }
    Ok(nbfm_line_spectrum_unchecked(p))
}

/// Same as [`nbfm_line_spectrum`] without the validity check.
///
/// Time-domain model:
/// `cos(ω_c t) + μ·sin(ω_c t) + (μ/2)·(sin((ω_c + ω_m)t) − sin((ω_c − ω_m)t))`
/// with `ω_m = 2π/T_c`. Lines are ordered by ascending frequency.
pub fn nbfm_line_spectrum_unchecked(p: &SweepParams) -> Vec<SpectrumLine> {
    let mu = p.modulation_index();
    let fc = p.carrier_hz();
    let fm = 1.0 / p.period;
    let j = Complex64::i();
    // cos → ½ at ±f; sin → ∓j/2 at ±f.
    let carrier = Complex64::new(0.5, 0.0) - j * (mu / 2.0);
    let upper = -j * (mu / 4.0);
    let lower = j * (mu / 4.0);
    let line = |frequency_hz: f64, amplitude: Complex64| SpectrumLine {
        frequency_hz,
        amplitude,
    };
    vec![
        line(-(fc + fm), upper.conj()),
        line(-fc, carrier.conj()),
        line(-(fc - fm), lower.conj()),
        line(fc - fm, lower),
        line(fc, carrier),
        line(fc + fm, upper),
    ]
}

/// Predicted and measured magnitude of one positive-frequency line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LineCheck {
    pub frequency_hz: f64,
    pub predicted: f64,
    pub measured: f64,
    /// `|measured − predicted| / predicted`; absent when the prediction is zero.
    pub relative_error: Option<f64>,
    /// Measured level relative to the measured carrier, dB.
    pub level_db: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub modulation_index: f64,
    pub n_periods: usize,
    pub sample_rate: f64,
    pub lines: Vec<LineCheck>,
}

impl SpectrumReport {
    /// Largest relative error over lines with a nonzero prediction.
    pub fn max_relative_error(&self) -> f64 {
        self.lines
            .iter()
            .filter_map(|l| l.relative_error)
            .fold(0.0, f64::max)
    }
}

/// Synthesises the carrier over `n_periods` sweeps and compares the DFT
/// magnitude at `f_c` and `f_c ± 1/T_c` with the narrowband prediction.
pub fn validate_spectrum(
    p: &SweepParams,
    sample_rate: f64,
    n_periods: usize,
) -> Result<SpectrumReport> {
    if n_periods < MIN_VALIDATION_PERIODS {
        return Err(Error::Configuration(format!(
            "spectrum validation needs at least {MIN_VALIDATION_PERIODS} periods, got {n_periods}"
        )));
    }
    let predicted = nbfm_line_spectrum(p)?;
    let carrier = sounding_sweep(p, 1.0, n_periods, sample_rate)?;
    let fm = 1.0 / p.period;
    let grid = FrequencyGrid::new(p.carrier_hz() - fm, fm, 3)?;
    let measured = dft_magnitude(&carrier, &grid)?;

    let positive = &predicted[3..];
    let carrier_level = measured[1].max(f64::MIN_POSITIVE);
    let lines = positive
        .iter()
        .zip(&measured)
        .map(|(line, &m)| {
            let pred = line.amplitude.norm();
            LineCheck {
                frequency_hz: line.frequency_hz,
                predicted: pred,
                measured: m,
                relative_error: (pred > 0.0).then(|| (m - pred).abs() / pred),
                level_db: 20.0 * (m / carrier_level).max(1e-20).log10(),
            }
        })
        .collect();
    Ok(SpectrumReport {
        modulation_index: p.modulation_index(),
        n_periods,
        sample_rate,
        lines,
    })
}

/// Mean power of the ramp over one period, `K²T_c²/12`.
pub fn sawtooth_mean_power(p: &SweepParams) -> f64 {
    (p.ramp_slope * p.period).powi(2) / 12.0
}

/// Total power `Σ|c|²` of a two-sided line set.
pub fn line_power(lines: &[SpectrumLine]) -> f64 {
    lines.iter().map(|l| l.amplitude.norm_sqr()).sum()
}
