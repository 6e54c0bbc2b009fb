//! Prints the four erasure-pair fringes of the balanced three-photon setup
//! next to the closed-form cos^2 / sin^2 rates.

use quantum_eraser::analysis::fit_profile;
use quantum_eraser::experiment::{ideal_conditional, ExperimentConfig};
use quantum_eraser::quantum::{joint_distribution, ArmOutcome, Mode, SlitScreenGeometry};

fn main() -> quantum_eraser::Result<()> {
    let geometry = SlitScreenGeometry::new(1e-4, 7.02e-7, 1.0, 0.02, 256)?;
    let config = ExperimentConfig::balanced(Mode::DoubleDelayedChoice, geometry);
    let dist = joint_distribution(&config.apparatus()?);

    println!("pair        P(pair)   visibility  phase     max|model - closed form|");
    for j in ArmOutcome::ERASURE {
        for k in ArmOutcome::ERASURE {
            let model = dist.conditional(j, Some(k)).expect("erasure pairs are populated");
            let ideal = ideal_conditional(j, k, &geometry);
            let worst = model.iter().zip(&ideal).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            let fit = fit_profile(&model, &geometry)?;
            println!(
                "{}{:<9} {:.6}  {:.6}    {:+.4}   {worst:.2e}",
                j.label(),
                k.primed_label(),
                dist.pair_probability(j, Some(k)),
                fit.visibility,
                fit.phase,
            );
        }
    }
    Ok(())
}
