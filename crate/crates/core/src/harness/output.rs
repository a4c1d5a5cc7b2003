use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};

use super::report::TrialReport;

pub const RESULTS_FILE: &str = "results.json";
pub const BER_FILE: &str = "ber_vs_snr.csv";
pub const TRANSFER_FILE: &str = "transfer_estimate.csv";
pub const SPECTRUM_FILE: &str = "spectrum_check.csv";
pub const WAVEFORM_FILE: &str = "waveform.csv";
pub const RECEIVED_FILE: &str = "received_sweep.csv";
pub const TAPS_FILE: &str = "tap_estimate.csv";

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn write_csv<R: Serialize>(path: &Path, rows: impl IntoIterator<Item = R>) -> Result<()> {
    let csv_err = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    for row in rows {
        w.serialize(row).map_err(csv_err)?;
    }
    w.flush().map_err(io_err(path))
}

#[derive(Serialize)]
struct BerRow {
    snr_db: f64,
    ber: f64,
    n_bits: u64,
}

#[derive(Serialize)]
struct TransferRow {
    frequency_hz: f64,
    mag_true: f64,
    mag_est: f64,
    valid: bool,
}

#[derive(Serialize)]
struct SpectrumRow {
    frequency_hz: f64,
    predicted: f64,
    measured: f64,
    relative_error: Option<f64>,
    level_db: f64,
}

#[derive(Serialize)]
struct WaveformRow {
    time_s: f64,
    sawtooth: f64,
    transmitted: f64,
}

#[derive(Serialize)]
struct ReceivedRow {
    time_s: f64,
    received: f64,
    envelope: Option<f64>,
}

#[derive(Serialize)]
struct TapRow {
    delay_s: f64,
    gain: f64,
}

/// Writes `results.json` and the CSV tables into `dir`, creating it if
/// needed. Returns the paths written. Noiseless points appear as `inf` in
/// the SNR column.
pub fn emit_results(r: &TrialReport, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let mut written = Vec::new();

    let path = dir.join(RESULTS_FILE);
    let mut json = serde_json::to_string_pretty(r).map_err(|source| Error::Json {
        path: path.clone(),
        source,
    })?;
    json.push('\n');
    fs::write(&path, json).map_err(io_err(&path))?;
    written.push(path);

    let path = dir.join(BER_FILE);
    write_csv(
        &path,
        r.snr_db
            .iter()
            .zip(&r.ber)
            .zip(&r.n_bits)
            .map(|((s, &ber), &n_bits)| BerRow {
                snr_db: s.unwrap_or(f64::INFINITY),
                ber,
                n_bits,
            }),
    )?;
    written.push(path);

    let t = &r.transfer_estimate;
    let path = dir.join(TRANSFER_FILE);
    write_csv(
        &path,
        (0..t.frequency_hz.len()).map(|i| TransferRow {
            frequency_hz: t.frequency_hz[i],
            mag_true: t.mag_true[i],
            mag_est: t.mag_est[i],
            valid: t.valid[i],
        }),
    )?;
    written.push(path);

    if let Some(taps) = &r.tap_estimate {
        let path = dir.join(TAPS_FILE);
        write_csv(
            &path,
            taps.delays
                .iter()
                .zip(&taps.gains)
                .map(|(&delay_s, &gain)| TapRow { delay_s, gain }),
        )?;
        written.push(path);
    }

    if let Some(spec) = &r.spectrum_check {
        let path = dir.join(SPECTRUM_FILE);
        write_csv(
            &path,
            spec.lines.iter().map(|l| SpectrumRow {
                frequency_hz: l.frequency_hz,
                predicted: l.predicted,
                measured: l.measured,
                relative_error: l.relative_error,
                level_db: l.level_db,
            }),
        )?;
        written.push(path);
    }

    if let Some(tr) = &r.traces {
        let path = dir.join(WAVEFORM_FILE);
        write_csv(
            &path,
            (0..tr.time_s.len()).map(|i| WaveformRow {
                time_s: tr.time_s[i],
                sawtooth: tr.sawtooth[i],
                transmitted: tr.transmitted[i],
            }),
        )?;
        written.push(path);
        let path = dir.join(RECEIVED_FILE);
        write_csv(
            &path,
            (0..tr.time_s.len()).map(|i| ReceivedRow {
                time_s: tr.time_s[i],
                received: tr.received[i],
                envelope: tr.envelope.get(i).copied(),
            }),
        )?;
        written.push(path);
    }

    Ok(written)
}

pub fn read_results(path: &Path) -> Result<TrialReport> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    serde_json::from_str(&text).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes a standalone spectrum check as CSV.
pub fn emit_spectrum(report: &crate::spectral::SpectrumReport, path: &Path) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(io_err(parent))?;
    }
    write_csv(
        path,
        report.lines.iter().map(|l| SpectrumRow {
            frequency_hz: l.frequency_hz,
            predicted: l.predicted,
            measured: l.measured,
            relative_error: l.relative_error,
            level_db: l.level_db,
        }),
    )
}
