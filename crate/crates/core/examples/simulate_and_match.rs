//! Samples triples, turns them into a timestamped detector stream with dark
//! counts, and recovers the coincidences with a 20 ns window.

use quantum_eraser::experiment::{ExperimentConfig, SwitchSchedule};
use quantum_eraser::quantum::{Mode, SlitScreenGeometry};
use quantum_eraser::sim::{
    emit_events, inject_background, match_coincidences, sample_triples, TimingLayout, DEFAULT_WINDOW_NS,
};

fn main() -> quantum_eraser::Result<()> {
    let geometry = SlitScreenGeometry::new(1e-4, 7.02e-7, 1.0, 0.02, 256)?;
    let schedule = SwitchSchedule::new(vec![1, 0, 1, 0], 500)?;
    let config = ExperimentConfig::balanced(Mode::DoubleDelayedChoice, geometry).with_schedule(&schedule);
    let layout = TimingLayout::for_config(&config, schedule.block_size);

    let seed = 11;
    let truth = sample_triples(&config, &schedule, seed)?;
    let clean = emit_events(&truth, &layout, seed);
    let clean_match = match_coincidences(&clean, DEFAULT_WINDOW_NS, &layout, config.mode)?;
    println!(
        "clean: {} events -> {} triples, exact recovery: {}",
        clean.len(),
        clean_match.triples.len(),
        clean_match.triples == truth
    );

    let noisy = inject_background(&clean, 1e-3, config.mode, geometry.n_bins(), seed);
    let noisy_match = match_coincidences(&noisy, DEFAULT_WINDOW_NS, &layout, config.mode)?;
    let kept = noisy_match.triples.iter().filter(|t| truth.contains(t)).count();
    println!(
        "with {} dark counts: {} triples ({} genuine), {} orphans",
        noisy.len() - clean.len(),
        noisy_match.triples.len(),
        kept,
        noisy_match.orphans.len()
    );
    for (detector, n) in noisy_match.orphan_counts() {
        println!("  orphans on {detector}: {n}");
    }
    Ok(())
}
