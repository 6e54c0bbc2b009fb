use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use quantum_eraser::cli::{
    cmd_decode, cmd_patterns, cmd_simulate, cmd_sweep, cmd_verify, DecodeMode, SimulateOptions, SweepGrid,
    VerifyOptions,
};
use quantum_eraser::experiment::ExperimentConfig;
use quantum_eraser::sim::DEFAULT_WINDOW_NS;

#[derive(Parser)]
#[command(name = "qeraser", version, about = "Quantum eraser simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact coincidence tables for the configured apparatus.
    Patterns {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Sample triples, emit timestamped events and match coincidences.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_WINDOW_NS)]
        window_ns: u64,
        /// Dark counts per nanosecond across all detectors.
        #[arg(long, default_value_t = 0.0)]
        background_rate: f64,
    },
    /// Randomised unitarity, normalisation and no-signaling checks.
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Replace Babu's splitter with one of squared norm N.
        #[arg(long, hide = true, value_name = "N")]
        inject_norm: Option<f64>,
    },
    /// Decode the bit schedule from a triples file.
    Decode {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        triples: PathBuf,
        #[arg(long, value_enum, default_value_t = Who::Alisha)]
        mode: Who,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Visibility and marginal-invariance sweep over splitter settings.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Who {
    Omniscient,
    Alisha,
}

fn run(cli: Cli) -> quantum_eraser::Result<bool> {
    match cli.command {
        Command::Patterns { config, out } => {
            let cfg = ExperimentConfig::load(&config)?;
            cmd_patterns(&cfg, &config.display().to_string(), &out)?;
            println!("wrote pattern tables to {}", out.display());
        }
        Command::Simulate {
            config,
            seed,
            out,
            window_ns,
            background_rate,
        } => {
            let cfg = ExperimentConfig::load(&config)?;
            let options = SimulateOptions {
                seed,
                window_ns,
                background_rate_per_ns: background_rate,
            };
            let summary = cmd_simulate(&cfg, &config.display().to_string(), &options, &out)?;
            println!("{}", summary.describe());
        }
        Command::Verify {
            config,
            trials,
            seed,
            out,
            inject_norm,
        } => {
            let cfg = ExperimentConfig::load(&config)?;
            let injected = inject_norm.map(|n| {
                let a = Complex64::new((0.5 * n).sqrt(), 0.0);
                (a, a)
            });
            let options = VerifyOptions { trials, seed, injected };
            let report = cmd_verify(&cfg, &config.display().to_string(), &options, &out)?;
            for c in &report.checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                println!("{status} {} max_residual={:e} tol={:e}", c.name, c.max_residual, c.tolerance);
                if let Some(f) = &c.failing {
                    println!("     worst draw: {f}");
                }
            }
            return Ok(report.passed);
        }
        Command::Decode {
            config,
            triples,
            mode,
            out,
        } => {
            let cfg = ExperimentConfig::load(&config)?;
            let mode = match mode {
                Who::Omniscient => DecodeMode::Omniscient,
                Who::Alisha => DecodeMode::Alisha,
            };
            let outcome = cmd_decode(&cfg, &config.display().to_string(), &triples, mode, &out)?;
            let r = &outcome.report;
            println!(
                "{}: decoded {} true {} bit_error_rate {:.6}",
                mode.name(),
                bits(&r.decoded_bits),
                bits(&r.true_bits),
                r.bit_error_rate
            );
            if let Some(mi) = outcome.mutual_information {
                println!("mutual_information {:.6e} bits (bias bound {:.6e})", mi.mi_bits, mi.bias_bound);
            }
            for w in &r.warnings {
                eprintln!("warning: {w}");
            }
        }
        Command::Sweep { config, out } => {
            let cfg = ExperimentConfig::load(&config)?;
            let rows = cmd_sweep(&cfg, &config.display().to_string(), &SweepGrid::default(), &out)?;
            let worst = rows.iter().map(|r| r.marginal_residual).fold(0.0, f64::max);
            println!("{} points, worst marginal residual {worst:e}", rows.len());
        }
    }
    Ok(true)
}

fn bits(b: &[u8]) -> String {
    b.iter().map(|v| char::from(b'0' + v)).collect()
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
