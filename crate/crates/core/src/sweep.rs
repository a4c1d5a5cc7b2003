//! Sawtooth-swept FM carrier and the BS-M-PSK transmitter.
//!
//! Time is measured so that every sweep occupies `[nT_c − T_c/2, nT_c + T_c/2)`.
//! Inside a sweep the ramp is `K·t'` with `t'` the time wrapped into
//! `[−T_c/2, T_c/2)`, so the instantaneous frequency climbs linearly from
//! `ω_c − B/2` to `ω_c + B/2` with `B = K_f·K·T_c`.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signal::SampledSignal;

/// Minimum ratio between the sample rate and the highest swept frequency.
pub const OVERSAMPLING: f64 = 8.0;

const ALIGN_TOL: f64 = 1e-6;

/// Sweep quadruple. Serialized with the conventional symbol names.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepParams {
    /// Carrier angular frequency, rad/s.
    pub omega_c: f64,
    /// Ramp slope, ramp units per second.
    #[serde(rename = "K")]
    pub ramp_slope: f64,
    /// FM constant, rad/s per ramp unit.
    #[serde(rename = "K_f")]
    pub fm_gain: f64,
    /// Sweep period (the channel coherence time), seconds.
    #[serde(rename = "T_c")]
    pub period: f64,
}

impl SweepParams {
    pub fn new(omega_c: f64, ramp_slope: f64, fm_gain: f64, period: f64) -> Result<Self> {
        let p = Self {
            omega_c,
            ramp_slope,
            fm_gain,
            period,
        };
        p.validate()?;
        Ok(p)
    }

    /// Zero `K` or `K_f` is accepted and yields an unswept carrier.
    pub fn validate(&self) -> Result<()> {
        let finite = [self.omega_c, self.ramp_slope, self.fm_gain, self.period]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::Configuration(
                "sweep parameters must be finite".into(),
            ));
        }
        if self.omega_c <= 0.0 || self.period <= 0.0 {
            return Err(Error::Configuration(format!(
                "omega_c and T_c must be positive (omega_c = {}, T_c = {})",
                self.omega_c, self.period
            )));
        }
        if self.ramp_slope < 0.0 || self.fm_gain < 0.0 {
            return Err(Error::Configuration(format!(
                "K and K_f must be non-negative (K = {}, K_f = {})",
                self.ramp_slope, self.fm_gain
            )));
        }
        if self.omega_min() <= 0.0 {
            return Err(Error::Configuration(format!(
                "swept band reaches non-positive frequencies: omega_c - B/2 = {}",
                self.omega_min()
            )));
        }
        Ok(())
    }

    /// Chirp rate `K_f·K`, rad/s².
    pub fn sweep_rate(&self) -> f64 {
        self.fm_gain * self.ramp_slope
    }

    /// Swept bandwidth `B = K_f·K·T_c`, rad/s.
    pub fn bandwidth(&self) -> f64 {
        self.sweep_rate() * self.period
    }

    pub fn bandwidth_hz(&self) -> f64 {
        self.bandwidth() / TAU
    }

    pub fn carrier_hz(&self) -> f64 {
        self.omega_c / TAU
    }

    pub fn omega_min(&self) -> f64 {
        self.omega_c - self.bandwidth() / 2.0
    }

    pub fn omega_max(&self) -> f64 {
        self.omega_c + self.bandwidth() / 2.0
    }

    pub fn f_min_hz(&self) -> f64 {
        self.omega_min() / TAU
    }

    pub fn f_max_hz(&self) -> f64 {
        self.omega_max() / TAU
    }

    /// Narrowband-FM modulation index `K_f·K·T_c² / (2π²)`.
    pub fn modulation_index(&self) -> f64 {
        self.bandwidth() * self.period / (2.0 * std::f64::consts::PI.powi(2))
    }

    /// Time wrapped into the sweep-local interval `[−T_c/2, T_c/2)`.
    pub fn wrap(&self, t: f64) -> f64 {
        let half = self.period / 2.0;
        let w = t - self.period * ((t + half) / self.period).floor();
        // Guard the upper edge against rounding to exactly T_c/2.
        if w >= half {
            w - self.period
        } else {
            w
        }
    }

    /// Lowest sample rate accepted by the waveform generators.
    pub fn required_sample_rate(&self) -> f64 {
        OVERSAMPLING * self.f_max_hz()
    }

    pub fn check_sample_rate(&self, sample_rate: f64) -> Result<()> {
        let need = self.required_sample_rate();
        if !(sample_rate >= need * (1.0 - 1e-12)) {
            return Err(Error::Configuration(format!(
                "sample rate {sample_rate} Hz is below {OVERSAMPLING}x the top swept frequency ({need} Hz required)"
            )));
        }
        Ok(())
    }
}

/// Constellation and symbol timing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModulationParams {
    /// Constellation size M (power of two).
    #[serde(rename = "M")]
    pub order: usize,
    #[serde(rename = "T_s")]
    pub symbol_duration: f64,
    #[serde(rename = "E_s")]
    pub symbol_energy: f64,
    /// Symbols per sweep `m`, with `T_c = m·T_s`.
    #[serde(rename = "m")]
    pub symbols_per_sweep: usize,
}

impl ModulationParams {
    /// Builds parameters with `T_s = T_c / m`.
    pub fn for_sweep(
        p: &SweepParams,
        order: usize,
        symbol_energy: f64,
        symbols_per_sweep: usize,
    ) -> Result<Self> {
        if symbols_per_sweep == 0 {
            return Err(Error::Configuration(
                "symbols per sweep must be positive".into(),
            ));
        }
        let mp = Self {
            order,
            symbol_duration: p.period / symbols_per_sweep as f64,
            symbol_energy,
            symbols_per_sweep,
        };
        mp.validate(p, true)?;
        Ok(mp)
    }

    /// Checks the constellation and its timing against the sweep.
    ///
    /// With `require_whole_cycles` false, a non-integer number of carrier
    /// cycles per symbol is tolerated.
    pub fn validate(&self, p: &SweepParams, require_whole_cycles: bool) -> Result<()> {
        if self.order < 2 || !self.order.is_power_of_two() {
            return Err(Error::Configuration(format!(
                "constellation order must be a power of two >= 2, got {}",
                self.order
            )));
        }
        if !(self.symbol_energy.is_finite() && self.symbol_energy > 0.0) {
            return Err(Error::Configuration(format!(
                "symbol energy must be positive, got {}",
                self.symbol_energy
            )));
        }
        if self.symbols_per_sweep == 0 || !(self.symbol_duration > 0.0) {
            return Err(Error::Configuration(
                "symbols per sweep and symbol duration must be positive".into(),
            ));
        }
        let implied = self.symbols_per_sweep as f64 * self.symbol_duration;
        if (implied - p.period).abs() > 1e-9 * p.period {
            return Err(Error::Configuration(format!(
                "T_c = m*T_s violated: {} * {} = {implied} != {}",
                self.symbols_per_sweep, self.symbol_duration, p.period
            )));
        }
        if require_whole_cycles {
            let cycles = p.carrier_hz() * self.symbol_duration;
            if (cycles - cycles.round()).abs() > ALIGN_TOL * cycles.max(1.0) {
                return Err(Error::Configuration(format!(
                    "symbol duration holds {cycles} carrier cycles; an integer is required"
                )));
            }
        }
        Ok(())
    }

    pub fn bits_per_symbol(&self) -> usize {
        self.order.trailing_zeros() as usize
    }

    /// Passband amplitude `√(2E_s/T_s)` of a transmitted symbol.
    pub fn amplitude(&self) -> f64 {
        (2.0 * self.symbol_energy / self.symbol_duration).sqrt()
    }

    /// Samples per symbol at `sample_rate`; must be a whole number.
    pub fn samples_per_symbol(&self, sample_rate: f64) -> Result<usize> {
        let exact = self.symbol_duration * sample_rate;
        let n = exact.round();
        if n < 1.0 || (exact - n).abs() > ALIGN_TOL * n.max(1.0) {
            return Err(Error::Configuration(format!(
                "symbol duration {} s is {exact} samples at {sample_rate} Hz; a whole number is required",
                self.symbol_duration
            )));
        }
        Ok(n as usize)
    }
}

/// A point in the (in-phase, quadrature) signal space.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Iq {
    pub i: f64,
    pub q: f64,
}

impl Iq {
    pub fn new(i: f64, q: f64) -> Self {
        Self { i, q }
    }

    pub fn norm(&self) -> f64 {
        self.i.hypot(self.q)
    }
}

/// Periodic ramp `K·t'`.
pub fn sawtooth(t: f64, p: &SweepParams) -> f64 {
    p.ramp_slope * p.wrap(t)
}

/// Carrier phase `ω_c·t + K_f·Φ(t)`.
///
/// `Φ` is the running integral of the ramp started at `−T_c/2`; per sweep it
/// is `K·(t'² − T_c²/4)/2`, which vanishes at both sweep edges, so the phase
/// is continuous everywhere.
pub fn sweep_phase(t: f64, p: &SweepParams) -> f64 {
    let tw = p.wrap(t);
    let half = p.period / 2.0;
    let ramp_integral = 0.5 * p.ramp_slope * (tw * tw - half * half);
    p.omega_c * t + p.fm_gain * ramp_integral
}

/// `dθ/dt = ω_c + K_f·K·t'`, rad/s.
pub fn instantaneous_frequency(t: f64, p: &SweepParams) -> f64 {
    p.omega_c + p.sweep_rate() * p.wrap(t)
}

/// `B = K_f·K·T_c`, rad/s.
pub fn sweep_bandwidth(p: &SweepParams) -> f64 {
    p.bandwidth()
}

/// Start time of slot `k` counted from the first sweep's leading edge.
pub fn slot_start(p: &SweepParams, mp: &ModulationParams, k: usize) -> f64 {
    -p.period / 2.0 + k as f64 * mp.symbol_duration
}

/// In-phase and quadrature basis functions over symbol slot `symbol_index`
/// of the first sweep.
pub fn basis_pair(
    p: &SweepParams,
    mp: &ModulationParams,
    symbol_index: usize,
    sample_rate: f64,
) -> Result<(SampledSignal, SampledSignal)> {
    if symbol_index >= mp.symbols_per_sweep {
        return Err(Error::Range(format!(
            "symbol index {symbol_index} outside 0..{}",
            mp.symbols_per_sweep
        )));
    }
    p.check_sample_rate(sample_rate)?;
    let sps = mp.samples_per_symbol(sample_rate)?;
    let t0 = slot_start(p, mp, symbol_index);
    let (i, q) = basis_samples(p, mp, t0, sps, sample_rate);
    Ok((
        SampledSignal::new(i, sample_rate, t0)?,
        SampledSignal::new(q, sample_rate, t0)?,
    ))
}

/// Basis samples over `n` samples starting at absolute time `t0`.
pub(crate) fn basis_samples(
    p: &SweepParams,
    mp: &ModulationParams,
    t0: f64,
    n: usize,
    sample_rate: f64,
) -> (Vec<f64>, Vec<f64>) {
    let amp = (2.0 / mp.symbol_duration).sqrt();
    (0..n)
        .map(|k| {
            let (s, c) = sweep_phase(t0 + k as f64 / sample_rate, p).sin_cos();
            (amp * c, amp * s)
        })
        .unzip()
}

fn gray_to_binary(mut g: usize) -> usize {
    let mut b = g;
    while g > 0 {
        g >>= 1;
        b ^= g;
    }
    b
}

fn binary_to_gray(b: usize) -> usize {
    b ^ (b >> 1)
}

/// Constellation index of a Gray-labelled bit group.
///
/// Labels are complemented before Gray decoding so that, for BPSK, bit 1
/// lands on phase 0 and bit 0 on phase π.
pub(crate) fn label_to_point(label: usize, order: usize) -> usize {
    gray_to_binary(label ^ (order - 1))
}

pub(crate) fn point_to_label(point: usize, order: usize) -> usize {
    binary_to_gray(point) ^ (order - 1)
}

/// Coordinates of constellation point `index` on the radius-√E_s circle.
pub fn constellation_point(index: usize, mp: &ModulationParams) -> Iq {
    let r = mp.symbol_energy.sqrt();
    let phase = TAU * index as f64 / mp.order as f64;
    let (s, c) = phase.sin_cos();
    // Snap exact axis crossings so BPSK points have q == 0 exactly.
    let snap = |v: f64| if v.abs() < 1e-15 { 0.0 } else { v };
    Iq::new(r * snap(c), r * snap(s))
}

/// Gray-coded M-PSK mapping, most significant bit first within a symbol.
pub fn mpsk_map(bits: &[u8], mp: &ModulationParams) -> Result<Vec<Iq>> {
    let k = mp.bits_per_symbol();
    if !bits.len().is_multiple_of(k) {
        return Err(Error::Framing(format!(
            "{} bits do not divide into {k}-bit symbols",
            bits.len()
        )));
    }
    if let Some(pos) = bits.iter().position(|&b| b > 1) {
        return Err(Error::Domain(format!("bit {pos} has value {}", bits[pos])));
    }
    Ok(bits
        .chunks_exact(k)
        .map(|group| {
            let label = group.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
            constellation_point(label_to_point(label, mp.order), mp)
        })
        .collect())
}

/// Transmit waveform: each symbol `(i, q)` drives `i·ϑ_i + q·ϑ_q` on
/// consecutive slots, starting at the leading edge of the first sweep.
pub fn modulate(
    bits: &[u8],
    p: &SweepParams,
    mp: &ModulationParams,
    n_sweeps: usize,
    sample_rate: f64,
) -> Result<SampledSignal> {
    p.check_sample_rate(sample_rate)?;
    let sps = mp.samples_per_symbol(sample_rate)?;
    let n_symbols = n_sweeps * mp.symbols_per_sweep;
    let needed = n_symbols * mp.bits_per_symbol();
    if bits.len() != needed {
        return Err(Error::Framing(format!(
            "{n_sweeps} sweeps need exactly {needed} bits, got {}",
            bits.len()
        )));
    }
    let symbols = mpsk_map(bits, mp)?;
    let t0 = -p.period / 2.0;
    let amp = (2.0 / mp.symbol_duration).sqrt();
    let mut samples = vec![0.0; n_symbols * sps];
    samples
        .par_chunks_mut(sps)
        .zip(symbols.par_iter())
        .enumerate()
        .for_each(|(k, (slot, sym))| {
            let base = k * sps;
            for (n, out) in slot.iter_mut().enumerate() {
                let t = t0 + (base + n) as f64 / sample_rate;
                let (s, c) = sweep_phase(t, p).sin_cos();
                *out = amp * (sym.i * c + sym.q * s);
            }
        });
    SampledSignal::new(samples, sample_rate, t0)
}

/// Unmodulated sweeping carrier of the given amplitude over `n_sweeps`
/// sweeps (a sounding frame).
pub fn sounding_sweep(
    p: &SweepParams,
    amplitude: f64,
    n_sweeps: usize,
    sample_rate: f64,
) -> Result<SampledSignal> {
    p.check_sample_rate(sample_rate)?;
    let n = (n_sweeps as f64 * p.period * sample_rate).round() as usize;
    let t0 = -p.period / 2.0;
    let samples = (0..n)
        .into_par_iter()
        .map(|k| amplitude * sweep_phase(t0 + k as f64 / sample_rate, p).cos())
        .collect();
    SampledSignal::new(samples, sample_rate, t0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::{energy, inner_product};

    fn params(k: f64, t_c: f64) -> SweepParams {
        SweepParams::new(TAU * 1000.0, k, 1.0, t_c).unwrap()
    }

    fn selfconsistent() -> (SweepParams, ModulationParams, f64) {
        let p = SweepParams::new(TAU * 10e6, 1000.0, TAU * 4e6, 1e-3).unwrap();
        let mp = ModulationParams::for_sweep(&p, 2, 1.0, 20).unwrap();
        (p, mp, 100e6)
    }

    #[test]
    fn sawtooth_examples() {
        let p = params(2.0, 1.0);
        assert_eq!(sawtooth(0.0, &p), 0.0);
        assert!((sawtooth(0.25, &p) - 0.5).abs() < 1e-15);
        assert!((sawtooth(0.75, &p) + 0.5).abs() < 1e-15);
        assert!((sawtooth(-0.5, &p) + 1.0).abs() < 1e-15);
        assert!((sawtooth(3.25, &p) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn phase_starts_at_lower_edge() {
        let (p, _, _) = selfconsistent();
        let t = -p.period / 2.0;
        assert!((sweep_phase(t, &p) - p.omega_c * t).abs() < 1e-9);
    }

    #[test]
    fn phase_increment_over_full_sweep() {
        let (p, _, _) = selfconsistent();
        let h = p.period / 2.0;
        // Approach the upper edge from below; the ramp integral returns to zero.
        let upper = sweep_phase(h - 1e-15, &p);
        let expect = p.omega_c * p.period;
        assert!(((upper - sweep_phase(-h, &p)) - expect).abs() < 1e-8 * expect);
    }

    #[test]
    fn phase_is_continuous_at_sweep_boundaries() {
        let (p, _, _) = selfconsistent();
        for n in -3i32..4 {
            let b = (n as f64 + 0.5) * p.period;
            let eps = 1e-13;
            let jump = sweep_phase(b + eps, &p) - sweep_phase(b - eps, &p);
            let expected = p.omega_c * 2.0 * eps;
            assert!((jump - expected).abs() < 1e-6, "jump {jump} at {b}");
        }
    }

    #[test]
    fn phase_derivative_matches_carrier_at_origin() {
        let (p, _, _) = selfconsistent();
        let h = 1e-10;
        let d = (sweep_phase(h, &p) - sweep_phase(-h, &p)) / (2.0 * h);
        assert!((d - p.omega_c).abs() < 1e-6 * p.omega_c);
    }

    #[test]
    fn instantaneous_frequency_edges() {
        let (p, _, _) = selfconsistent();
        let b = p.bandwidth();
        assert_eq!(instantaneous_frequency(0.0, &p), p.omega_c);
        assert!(
            (instantaneous_frequency(-p.period / 2.0, &p) - (p.omega_c - b / 2.0)).abs() < 1e-6
        );
        let below_top = p.period / 2.0 - 1e-12;
        let rel =
            (instantaneous_frequency(below_top, &p) - (p.omega_c + b / 2.0)).abs() / p.omega_c;
        assert!(rel < 1e-6);
    }

    #[test]
    fn bandwidth_examples() {
        let slow = SweepParams::new(1e5, 0.75, 120.0, 31.25e-3).unwrap();
        assert!((sweep_bandwidth(&slow) - 2.8125).abs() < 1e-12);
        let p = SweepParams::new(TAU * 1e6, 1.0, TAU * 1e6, 1e-3).unwrap();
        assert!((sweep_bandwidth(&p) - 6283.185307179586).abs() < 1e-6);
        let doubled = SweepParams { period: 2e-3, ..p };
        assert!((sweep_bandwidth(&doubled) - 2.0 * sweep_bandwidth(&p)).abs() < 1e-9);
    }

    #[test]
    fn rejects_band_reaching_dc() {
        assert!(SweepParams::new(10.0, 1.0, 30.0, 1.0).is_err());
        assert!(SweepParams::new(-1.0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn basis_is_orthonormal_in_every_slot() {
        let (p, mp, fs) = selfconsistent();
        for k in 0..mp.symbols_per_sweep {
            let (bi, bq) = basis_pair(&p, &mp, k, fs).unwrap();
            assert!((energy(&bi).unwrap() - 1.0).abs() < 1e-3, "slot {k}");
            assert!((energy(&bq).unwrap() - 1.0).abs() < 1e-3, "slot {k}");
            assert!(inner_product(&bi, &bq).unwrap().abs() < 1e-3, "slot {k}");
        }
    }

    #[test]
    fn zero_sweep_basis_is_plain_quadrature_pair() {
        let p = SweepParams::new(TAU * 1000.0, 1.0, 0.0, 0.01).unwrap();
        let mp = ModulationParams::for_sweep(&p, 2, 1.0, 1).unwrap();
        let fs = 80_000.0;
        let (bi, bq) = basis_pair(&p, &mp, 0, fs).unwrap();
        let amp = (2.0 / mp.symbol_duration).sqrt();
        for n in 0..bi.len() {
            let t = bi.time_at(n);
            assert!((bi.samples()[n] - amp * (p.omega_c * t).cos()).abs() < 1e-9);
            assert!((bq.samples()[n] - amp * (p.omega_c * t).sin()).abs() < 1e-9);
        }
    }

    #[test]
    fn basis_rejects_low_sample_rate() {
        let (p, mp, _) = selfconsistent();
        assert!(matches!(
            basis_pair(&p, &mp, 0, 50e6),
            Err(Error::Configuration(_))
        ));
    }

    #[test]
    fn bpsk_mapping() {
        let (p, _, _) = selfconsistent();
        let mp = ModulationParams::for_sweep(&p, 2, 1.0, 20).unwrap();
        assert_eq!(mpsk_map(&[1], &mp).unwrap(), vec![Iq::new(1.0, 0.0)]);
        assert_eq!(mpsk_map(&[0], &mp).unwrap(), vec![Iq::new(-1.0, 0.0)]);
    }

    #[test]
    fn mapping_lies_on_circle_and_is_gray() {
        let (p, _, _) = selfconsistent();
        for order in [2usize, 4, 8, 16] {
            let mp = ModulationParams::for_sweep(&p, order, 2.5, 20).unwrap();
            let k = mp.bits_per_symbol();
            for label in 0..order {
                let bits: Vec<u8> = (0..k).rev().map(|b| ((label >> b) & 1) as u8).collect();
                let pt = mpsk_map(&bits, &mp).unwrap()[0];
                assert!((pt.i * pt.i + pt.q * pt.q - 2.5).abs() < 1e-12);
            }
            for idx in 0..order {
                let a = point_to_label(idx, order);
                let b = point_to_label((idx + 1) % order, order);
                assert_eq!((a ^ b).count_ones(), 1, "M={order} idx={idx}");
                assert_eq!(label_to_point(a, order), idx);
            }
        }
    }

    #[test]
    fn mapping_framing_error() {
        let (p, _, _) = selfconsistent();
        let mp = ModulationParams::for_sweep(&p, 8, 1.0, 20).unwrap();
        assert!(matches!(mpsk_map(&[1, 0], &mp), Err(Error::Framing(_))));
    }

    #[test]
    fn modulate_all_ones_equals_scaled_basis() {
        let (p, mp, fs) = selfconsistent();
        let bits = vec![1u8; mp.symbols_per_sweep];
        let s = modulate(&bits, &p, &mp, 1, fs).unwrap();
        let sps = mp.samples_per_symbol(fs).unwrap();
        assert_eq!(s.len(), sps * mp.symbols_per_sweep);
        for k in [0usize, 7, 19] {
            let (bi, _) = basis_pair(&p, &mp, k, fs).unwrap();
            let slot = &s.samples()[k * sps..(k + 1) * sps];
            // Sample times are formed differently, so allow rounding at the 1e-9 relative level.
            let tol = 1e-9 * mp.amplitude();
            for (a, b) in slot.iter().zip(bi.samples()) {
                assert!((a - b).abs() < tol, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn slot_energy_is_symbol_energy() {
        let (p, _, fs) = selfconsistent();
        let mp = ModulationParams::for_sweep(&p, 4, 3.0, 20).unwrap();
        let bits: Vec<u8> = (0..40).map(|i| ((i * 7 + 3) % 5 % 2) as u8).collect();
        let s = modulate(&bits, &p, &mp, 1, fs).unwrap();
        let sps = mp.samples_per_symbol(fs).unwrap();
        for k in 0..mp.symbols_per_sweep {
            let e = energy(&s.slice(k * sps, sps).unwrap()).unwrap();
            assert!((e - 3.0).abs() < 0.005 * 3.0, "slot {k}: {e}");
        }
    }

    #[test]
    fn modulate_bit_count_mismatch() {
        let (p, mp, fs) = selfconsistent();
        assert!(matches!(
            modulate(&[1, 0, 1], &p, &mp, 1, fs),
            Err(Error::Framing(_))
        ));
    }

    #[test]
    fn whole_cycle_rule() {
        let p = SweepParams::new(1e5, 0.75, 120.0, 31.25e-3).unwrap();
        let mp = ModulationParams {
            order: 2,
            symbol_duration: 31.25e-3 / 10.0,
            symbol_energy: 1.0,
            symbols_per_sweep: 10,
        };
        assert!(mp.validate(&p, true).is_err());
        assert!(mp.validate(&p, false).is_ok());
    }
}
