use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bspsk_core::harness::{
    self, apply_seed_override, emit_results, emit_spectrum, load_config, ScenarioConfig, SEED_ENV,
};
use bspsk_core::{validate_spectrum, Error};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "bspsk",
    about = "Band-sweeping M-PSK link simulator",
    disable_version_flag = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario from a JSON config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a built-in scenario.
    Preset {
        /// One of paper_fig12, selfconsistent_2tap, flat_awgn.
        name: String,
        #[arg(long, required_unless_present = "print_config")]
        out: Option<PathBuf>,
        /// Print the preset's config as JSON instead of running it.
        #[arg(long)]
        print_config: bool,
    },
    /// Compare the carrier's line spectrum with the narrowband prediction.
    ValidateSpectrum {
        #[arg(long)]
        config: PathBuf,
        /// Sweep periods to synthesize.
        #[arg(long, default_value_t = 8)]
        periods: usize,
        /// Also write the line table as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the version and results schema.
    Version,
}

const EXIT_CONFIG: u8 = 1;
const EXIT_RUNTIME: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_CONFIG)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_config_error() {
                EXIT_CONFIG
            } else {
                EXIT_RUNTIME
            })
        }
    }
}

fn dispatch(command: Command) -> Result<(), Error> {
    match command {
        Command::Run { config, out } => run(load_config(&config)?, &out),
        Command::Preset {
            name,
            out,
            print_config,
        } => {
            let cfg = harness::preset(&name)?;
            if print_config {
                println!("{}", cfg.to_json());
                return Ok(());
            }
            run(cfg, out.as_deref().expect("clap enforces --out"))
        }
        Command::ValidateSpectrum {
            config,
            periods,
            out,
        } => {
            let cfg = load_config(&config)?;
            cfg.sweep.validate()?;
            let report = validate_spectrum(&cfg.sweep, cfg.sample_rate, periods)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
            if let Some(path) = out {
                emit_spectrum(&report, &path)?;
            }
            Ok(())
        }
        Command::Version => {
            println!(
                "bspsk {} (results schema {})",
                env!("CARGO_PKG_VERSION"),
                harness::SCHEMA_VERSION
            );
            Ok(())
        }
    }
}

fn run(mut cfg: ScenarioConfig, out: &Path) -> Result<(), Error> {
    let source = apply_seed_override(&mut cfg, std::env::var(SEED_ENV).ok().as_deref())?;
    let mut report = bspsk_core::run_scenario(&cfg)?;
    report.seed_record.source = source;
    for path in emit_results(&report, out)? {
        eprintln!("wrote {}", path.display());
    }
    for (i, snr) in report.snr_db.iter().enumerate() {
        let snr = snr.map_or("noiseless".to_string(), |s| format!("{s} dB"));
        println!(
            "snr {snr:>10}  ber {:.3e}  ({} / {} bits)",
            report.ber[i], report.bit_errors[i], report.n_bits[i]
        );
    }
    Ok(())
}
