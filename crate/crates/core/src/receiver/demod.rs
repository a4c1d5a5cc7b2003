//! Correlator, zero-forcing equalizer and slicer.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::channel::ChannelRealization;
use crate::error::{Error, Result};
use crate::receiver::estimate::TransferEstimate;
use crate::signal::{dot, SampledSignal};
use crate::sweep::{
    basis_samples, instantaneous_frequency, point_to_label, Iq, ModulationParams, SweepParams,
};

/// ZF gain floor as a fraction of the largest estimated gain.
pub const ZF_FLOOR: f64 = 0.05;

/// Projects every symbol slot onto its locally regenerated basis pair.
///
/// Slot `k` starts `k·T_s` after the signal's first sample.
pub fn correlate_demod(
    s: &SampledSignal,
    p: &SweepParams,
    mp: &ModulationParams,
) -> Result<Vec<Iq>> {
    let fs = s.sample_rate();
    let sps = mp.samples_per_symbol(fs)?;
    if s.is_empty() || s.len() % sps != 0 {
        return Err(Error::Framing(format!(
            "{} samples is not a whole number of {sps}-sample symbols",
            s.len()
        )));
    }
    let t0 = s.t0();
    Ok(s.samples()
        .par_chunks(sps)
        .enumerate()
        .map(|(k, slot)| {
            let start = t0 + (k * sps) as f64 / fs;
            let (bi, bq) = basis_samples(p, mp, start, sps, fs);
            Iq::new(dot(slot, &bi) / fs, dot(slot, &bq) / fs)
        })
        .collect())
}

/// Instantaneous frequency (Hz) at the centre of slot `k`, counting slots
/// from a sweep's leading edge.
pub fn slot_center_hz(p: &SweepParams, mp: &ModulationParams, k: usize) -> f64 {
    let slot = k % mp.symbols_per_sweep;
    let t = -p.period / 2.0 + (slot as f64 + 0.5) * mp.symbol_duration;
    instantaneous_frequency(t, p) / TAU
}

/// Divides each projection by the estimated `|H|` at its slot-centre
/// frequency. Gains below `ZF_FLOOR·max|H|` are clamped to that floor.
pub fn zf_equalize(
    proj: &[Iq],
    h: &TransferEstimate,
    p: &SweepParams,
    mp: &ModulationParams,
) -> Result<Vec<Iq>> {
    let filled = h.filled()?;
    let floor = ZF_FLOOR * filled.iter().copied().fold(0.0, f64::max);
    Ok(proj
        .iter()
        .enumerate()
        .map(|(k, pt)| {
            let g = TransferEstimate::interpolate(&filled, &h.grid, slot_center_hz(p, mp, k));
            let g = g.max(floor).max(f64::MIN_POSITIVE);
            Iq::new(pt.i / g, pt.q / g)
        })
        .collect())
}

/// Equalizes with the true complex response (genie channel knowledge).
///
/// The received pair `(i', q')` relates to the sent pair through
/// `i' − jq' = H·(i − jq)`.
pub fn zf_equalize_genie(
    proj: &[Iq],
    ch: &ChannelRealization,
    p: &SweepParams,
    mp: &ModulationParams,
) -> Vec<Iq> {
    let centers: Vec<Complex64> = (0..mp.symbols_per_sweep)
        .map(|k| ch.response_at(slot_center_hz(p, mp, k)))
        .collect();
    let floor = ZF_FLOOR * centers.iter().map(|h| h.norm()).fold(0.0, f64::max);
    proj.iter()
        .enumerate()
        .map(|(k, pt)| {
            let mut h = centers[k % mp.symbols_per_sweep];
            if h.norm() < floor {
                h = if h.norm() > 0.0 {
                    h.unscale(h.norm()).scale(floor)
                } else {
                    Complex64::new(floor, 0.0)
                };
            }
            let z = Complex64::new(pt.i, -pt.q) / h;
            Iq::new(z.re, -z.im)
        })
        .collect()
}

/// Nearest-point decision and Gray decode, most significant bit first.
///
/// Ties, including the origin, resolve to the lower constellation index.
pub fn slicer(proj: &[Iq], mp: &ModulationParams) -> Vec<u8> {
    let m = mp.order;
    let k = mp.bits_per_symbol();
    let mut bits = Vec::with_capacity(proj.len() * k);
    for pt in proj {
        let sector = pt.q.atan2(pt.i) * m as f64 / TAU;
        // Round half down so a point midway between two neighbours picks the lower index.
        let idx = ((sector - 0.5).ceil() as i64).rem_euclid(m as i64) as usize;
        let label = point_to_label(idx, m);
        bits.extend((0..k).rev().map(|b| ((label >> b) & 1) as u8));
    }
    bits
}
