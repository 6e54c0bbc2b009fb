//! Plug-in mutual information between the bit schedule and each party's
//! observables, against the small-sample bias bound.

use quantum_eraser::analysis::{alisha_observables, bit_labels, mutual_information, omniscient_observables};
use quantum_eraser::experiment::{ExperimentConfig, SwitchSchedule};
use quantum_eraser::quantum::{Mode, SlitScreenGeometry};
use quantum_eraser::sim::sample_triples;

fn main() -> quantum_eraser::Result<()> {
    let geometry = SlitScreenGeometry::new(1e-4, 7.02e-7, 1.0, 0.02, 64)?;
    let schedule = SwitchSchedule::new(vec![0, 1, 1, 0, 1, 0, 0, 1], 20_000)?;
    let config = ExperimentConfig::balanced(Mode::DoubleDelayedChoice, geometry).with_schedule(&schedule);
    let triples = sample_triples(&config, &schedule, 5)?;
    let labels = bit_labels(&triples, &schedule);

    let alisha = mutual_information(&labels, &alisha_observables(&triples))?;
    let full = mutual_information(&labels, &omniscient_observables(&triples))?;
    for (name, est) in [("alisha", alisha), ("omniscient", full)] {
        println!(
            "{name:<11} I = {:.3e} bits, bias bound {:.3e}, ratio {:.2}, {} cells",
            est.mi_bits,
            est.bias_bound,
            est.mi_bits / est.bias_bound,
            est.n_cells
        );
    }
    Ok(())
}
