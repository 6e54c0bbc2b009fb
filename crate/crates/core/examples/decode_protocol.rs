//! Babu switches his splitter per block to send bits. With the full
//! coincidence record they decode; from Alisha's data alone they do not.

use quantum_eraser::analysis::{decode_alisha_only, decode_omniscient};
use quantum_eraser::experiment::{ExperimentConfig, SwitchSchedule};
use quantum_eraser::quantum::{Mode, SlitScreenGeometry};
use quantum_eraser::sim::sample_triples;

fn bits(b: &[u8]) -> String {
    b.iter().map(|v| char::from(b'0' + v)).collect()
}

fn main() -> quantum_eraser::Result<()> {
    let geometry = SlitScreenGeometry::new(1e-4, 7.02e-7, 1.0, 0.02, 256)?;
    let message = SwitchSchedule::parse_bit_string("1011001110001011")?;
    let schedule = SwitchSchedule::new(message, 5000)?;
    let config = ExperimentConfig::balanced(Mode::DoubleDelayedChoice, geometry).with_schedule(&schedule);
    let triples = sample_triples(&config, &schedule, 3)?;

    for report in [
        decode_omniscient(&triples, &schedule, &geometry)?,
        decode_alisha_only(&triples, &schedule, &geometry)?,
    ] {
        println!("{}", report.selector);
        println!("  sent    {}", bits(&report.true_bits));
        println!("  decoded {}", bits(&report.decoded_bits));
        println!("  BER {:.3}", report.bit_error_rate);
        let v: Vec<String> = report.per_block_visibility.iter().map(|v| format!("{v:.2}")).collect();
        println!("  block visibilities {}", v.join(" "));
    }
    Ok(())
}
