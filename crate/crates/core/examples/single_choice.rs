//! Two-photon delayed choice: D1 and D2 fringes are complementary and add up
//! to the fringe-free envelope.

use quantum_eraser::analysis::fit_profile;
use quantum_eraser::experiment::{single_choice_pattern, ExperimentConfig};
use quantum_eraser::quantum::{ArmOutcome, Envelope, Mode, SignalModel, SlitScreenGeometry};

fn main() -> quantum_eraser::Result<()> {
    let geometry = SlitScreenGeometry::new(1e-4, 7.02e-7, 1.0, 0.02, 256)?;
    let mut config = ExperimentConfig::balanced(Mode::SingleDelayedChoice, geometry);
    config.envelope = Envelope::Gaussian { sigma: 0.005 };
    let app = config.apparatus()?;
    let signal = SignalModel::new(geometry, config.envelope)?;

    let d1 = single_choice_pattern(ArmOutcome::D1, &app)?;
    let d2 = single_choice_pattern(ArmOutcome::D2, &app)?;
    let flat = |p: &[f64]| -> Vec<f64> {
        p.iter()
            .enumerate()
            .map(|(i, v)| v / signal.envelope_weight(geometry.bin_center(i)))
            .collect()
    };
    let f1 = fit_profile(&flat(&d1), &geometry)?;
    let f2 = fit_profile(&flat(&d2), &geometry)?;
    println!("D1: visibility {:.9} phase {:+.6}", f1.visibility, f1.phase);
    println!("D2: visibility {:.9} phase {:+.6}", f2.visibility, f2.phase);
    let gap = (f2.phase - f1.phase).rem_euclid(std::f64::consts::TAU);
    println!("phase difference {gap:.9} rad (pi = {:.9})", std::f64::consts::PI);

    let worst = (0..geometry.n_bins())
        .map(|i| (d1[i] + d2[i] - signal.envelope_weight(geometry.bin_center(i))).abs())
        .fold(0.0, f64::max);
    println!("max |D1 + D2 - envelope| = {worst:.2e}");
    Ok(())
}
