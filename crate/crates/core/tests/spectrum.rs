mod common;

use std::f64::consts::{PI, TAU};

use bspsk_core::spectral::{sawtooth_mean_power, sawtooth_synthesis, NBFM_INDEX_LIMIT};
use bspsk_core::{nbfm_line_spectrum, sawtooth, validate_spectrum, Error, SweepParams};

fn sweep_with_index(mu: f64) -> SweepParams {
    let period: f64 = 1e-3;
    SweepParams::new(TAU * 10e3, 1.0, mu * 2.0 * PI * PI / period.powi(2), period).unwrap()
}

#[test]
fn wideband_sweep_is_rejected() {
    let p = sweep_with_index(0.3);
    assert!(matches!(
        nbfm_line_spectrum(&p),
        Err(Error::ApproximationDomain { .. })
    ));
    let err = validate_spectrum(&p, 100e3, 8).unwrap_err();
    assert!(err.is_config_error());
    assert!(validate_spectrum(&sweep_with_index(0.99 * NBFM_INDEX_LIMIT), 100e3, 8).is_ok());
}

#[test]
fn line_error_grows_with_index() {
    let errs: Vec<f64> = [0.005, 0.05, 0.2]
        .iter()
        .map(|&mu| {
            validate_spectrum(&sweep_with_index(mu), 100e3, 8)
                .unwrap()
                .max_relative_error()
        })
        .collect();
    assert!(errs[2] > errs[1], "{errs:?}");
    assert!(errs[1] < 0.05 && errs[0] < 0.01, "{errs:?}");
}

#[test]
fn measured_sidebands_are_symmetric() {
    let report = validate_spectrum(&sweep_with_index(0.05), 100e3, 16).unwrap();
    let (lo, hi) = (&report.lines[0], &report.lines[2]);
    assert!((lo.measured - hi.measured).abs() < 0.02 * hi.measured);
    assert!(lo.level_db < -20.0 && hi.level_db < -20.0);
}

#[test]
fn synthesis_converges_away_from_the_jump() {
    let p = SweepParams::new(TAU * 1e3, 2.0, 1.0, 1e-3).unwrap();
    for t in [-0.3e-3, -0.1e-3, 0.0, 0.2e-3, 0.4e-3] {
        let exact = sawtooth(t, &p);
        let approx = sawtooth_synthesis(t, &p, 20_000);
        assert!(
            (exact - approx).abs() < 1e-3 * p.ramp_slope * p.period,
            "t={t}"
        );
    }
}

#[test]
fn ramp_power_matches_sampling() {
    let p = SweepParams::new(TAU * 1e3, 3.0, 1.0, 2e-3).unwrap();
    let numeric = common::ramp_power_numeric(&p, 200_000);
    assert!((sawtooth_mean_power(&p) - numeric).abs() < 1e-6 * numeric);
}
