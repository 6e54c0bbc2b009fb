//! Loads a config file and runs the same pipeline as the command line:
//! simulate, then decode from both vantage points.
//!
//! `cargo run --example run_from_config -- configs/balanced.toml out/`

use std::path::PathBuf;

use quantum_eraser::cli::{cmd_decode, cmd_simulate, DecodeMode, SimulateOptions};
use quantum_eraser::experiment::ExperimentConfig;

fn main() -> quantum_eraser::Result<()> {
    let mut args = std::env::args().skip(1);
    let config_path = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs/balanced.toml"));
    let out = args.next().map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("qeraser-example"));

    let config = ExperimentConfig::load(&config_path)?;
    let label = config_path.display().to_string();
    let summary = cmd_simulate(&config, &label, &SimulateOptions { seed: 1, ..Default::default() }, &out)?;
    println!("{}", summary.describe());
    for mode in [DecodeMode::Omniscient, DecodeMode::Alisha] {
        let outcome = cmd_decode(&config, &label, &summary.triples_path, mode, &out)?;
        println!("{}: BER {:.3} -> {}", mode.name(), outcome.report.bit_error_rate, outcome.report_path.display());
    }
    Ok(())
}
