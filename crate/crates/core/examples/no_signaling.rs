//! Alisha's marginal does not move when Babu removes his splitter, rotates
//! it, or changes his tap.

use quantum_eraser::experiment::ExperimentConfig;
use quantum_eraser::quantum::{
    alisha_marginal, joint_distribution, unitary_from_angle, ArmOutcome, Mode, SlitScreenGeometry,
};

fn max_diff(a: &[[f64; 4]], b: &[[f64; 4]]) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(x, y)| x.iter().zip(y).map(|(u, v)| (u - v).abs()))
        .fold(0.0, f64::max)
}

fn main() -> quantum_eraser::Result<()> {
    let geometry = SlitScreenGeometry::new(1e-4, 7.02e-7, 1.0, 0.02, 256)?;
    let app = ExperimentConfig::balanced(Mode::DoubleDelayedChoice, geometry).apparatus()?;
    let reference = alisha_marginal(&joint_distribution(&app))?;

    let babu = app.babu;
    let variants = [
        ("splitter removed", babu.with_splitter(false)),
        ("theta=0.3 chi=1.1", babu.with_unitary(unitary_from_angle(0.3, 1.1))),
        ("tap 0.9", babu.with_tap(0.9)?),
    ];
    for (name, optics) in variants {
        let m = alisha_marginal(&joint_distribution(&app.with_babu(optics)))?;
        println!("{name:<20} max |delta marginal| = {:.2e}", max_diff(&reference, &m));
    }

    let d1: f64 = reference.iter().map(|row| row[ArmOutcome::D1.index()]).sum();
    println!("P(D1') = {d1:.6}, profile is flat: {}", {
        let first = reference[0][0];
        reference.iter().all(|r| (r[0] - first).abs() < 1e-15)
    });
    Ok(())
}
