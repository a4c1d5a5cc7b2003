//! Receiver: envelope-based channel estimation, correlation, equalization
//! and decisions.
//!
//! Channel estimation runs on the raw received passband waveform, in
//! parallel with the correlator. A constant-envelope transmission rides the
//! channel magnitude `|H(f(t))|` on its envelope as the carrier sweeps.

mod demod;
mod envelope;
mod estimate;

pub use demod::{
    correlate_demod, slicer, slot_center_hz, zf_equalize, zf_equalize_genie, ZF_FLOOR,
};
pub use envelope::{envelope_detect, CutoffPlan, EnvelopeDetector, MIN_SEPARATION};
pub use estimate::{
    envelope_to_transfer, estimate_taps, TapEstimate, TimeInterval, TransferEstimate,
    MIN_VALID_FRACTION,
};
