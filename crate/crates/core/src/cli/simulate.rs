use std::path::Path as FsPath;

use super::{emit, ensure_dir, RunManifest};
use crate::error::{Error, Result};
use crate::experiment::ExperimentConfig;
use crate::sim::{
    emit_events, inject_background, match_coincidences, sample_triples, EventLog, SimStreamHeader, TimingLayout,
    TriplesFile, DEFAULT_WINDOW_NS,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulateOptions {
    pub seed: u64,
    pub window_ns: u64,
    /// Dark counts per nanosecond; zero disables background.
    pub background_rate_per_ns: f64,
}

impl Default for SimulateOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            window_ns: DEFAULT_WINDOW_NS,
            background_rate_per_ns: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulateSummary {
    pub sampled_triples: usize,
    pub events: usize,
    pub matched_triples: usize,
    pub orphans: usize,
    /// Matched triples where either arm hit D3/D4 (or D3'/D4').
    pub which_path_fraction: f64,
    pub events_path: std::path::PathBuf,
    pub triples_path: std::path::PathBuf,
}

impl SimulateSummary {
    pub fn describe(&self) -> String {
        format!(
            "sampled {} triples, {} events, matched {} triples, {} orphans, which-path fraction {:.6}",
            self.sampled_triples, self.events, self.matched_triples, self.orphans, self.which_path_fraction
        )
    }
}

/// Samples the configured schedule, emits timestamped events (plus optional
/// background), matches coincidences and writes `events.csv` and
/// `triples.csv`.
pub fn cmd_simulate(
    config: &ExperimentConfig,
    config_path: &str,
    options: &SimulateOptions,
    out: &FsPath,
) -> Result<SimulateSummary> {
    let schedule = config
        .switch_schedule()
        .ok_or_else(|| Error::Schedule("config has no [experiment.schedule] section".into()))?;
    let layout = TimingLayout::for_config(config, schedule.block_size);
    let digest = config.digest();
    let header = SimStreamHeader::new(options.seed, &digest, config.mode, options.window_ns, &layout, &schedule);

    let sampled = sample_triples(config, &schedule, options.seed)?;
    let mut events = emit_events(&sampled, &layout, options.seed);
    if options.background_rate_per_ns > 0.0 {
        events = inject_background(
            &events,
            options.background_rate_per_ns,
            config.mode,
            config.geometry.n_bins(),
            options.seed,
        );
    }
    let matched = match_coincidences(&events, options.window_ns, &layout, config.mode)?;

    ensure_dir(out)?;
    let mut manifest = RunManifest::new("simulate", config_path, &digest, Some(options.seed));
    let log = EventLog {
        header: header.clone(),
        records: events,
    };
    let events_path = emit(out, "events.csv", &log.render(), &mut manifest)?;
    let which_path = matched
        .triples
        .iter()
        .filter(|t| t.babu.is_which_path() || t.alisha.is_some_and(|k| k.is_which_path()))
        .count();
    let summary_matched = matched.triples.len();
    let triples = TriplesFile {
        header,
        triples: matched.triples,
    };
    let triples_path = emit(out, "triples.csv", &triples.render(), &mut manifest)?;
    manifest.write_to(out)?;

    Ok(SimulateSummary {
        sampled_triples: sampled.len(),
        events: log.records.len(),
        matched_triples: summary_matched,
        orphans: matched.orphans.len(),
        which_path_fraction: if summary_matched == 0 {
            0.0
        } else {
            which_path as f64 / summary_matched as f64
        },
        events_path,
        triples_path,
    })
}
