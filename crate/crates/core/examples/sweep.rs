//! Sweeps both splitters and taps, reporting the worst marginal and
//! cancellation residuals over the grid.

use quantum_eraser::cli::sweep::sweep_rows;
use quantum_eraser::cli::SweepGrid;
use quantum_eraser::experiment::ExperimentConfig;
use quantum_eraser::quantum::{Mode, SlitScreenGeometry};

fn main() -> quantum_eraser::Result<()> {
    let geometry = SlitScreenGeometry::new(1e-4, 7.02e-7, 1.0, 0.02, 128)?;
    let config = ExperimentConfig::balanced(Mode::DoubleDelayedChoice, geometry);
    let rows = sweep_rows(&config, &SweepGrid::default())?;

    let worst_marginal = rows.iter().map(|r| r.marginal_residual).fold(0.0, f64::max);
    let worst_cancel = rows.iter().map(|r| r.cancellation_residual).fold(0.0, f64::max);
    let max_marginal_vis = rows
        .iter()
        .flat_map(|r| r.marginal_visibility)
        .fold(0.0, f64::max);
    println!("{} settings", rows.len());
    println!("worst marginal residual     {worst_marginal:.2e}");
    println!("worst cancellation residual {worst_cancel:.2e}");
    println!("largest marginal visibility {max_marginal_vis:.2e}");
    for r in rows.iter().step_by(37) {
        println!("  point {:?} pair visibilities {:.3?}", r.point.map(|v| (v * 1e3).round() / 1e3), r.pair_visibility);
    }
    Ok(())
}
