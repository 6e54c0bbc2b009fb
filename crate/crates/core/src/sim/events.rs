use std::fmt;

use super::rng::{below, stream_rng, DELAY_STREAM};
use super::sample::CoincidenceTriple;
use crate::experiment::ExperimentConfig;
use crate::quantum::{ArmOutcome, Mode};

/// Idler delays after the signal detection are uniform on this range.
pub const MIN_DELAY_NS: u64 = 1;
pub const MAX_DELAY_NS: u64 = 10;

const BASE_SPACING_NS: f64 = 1000.0;
const MIN_SPACING_NS: u64 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Detector {
    D0,
    Babu(ArmOutcome),
    Alisha(ArmOutcome),
}

impl Detector {
    pub fn all(mode: Mode) -> Vec<Detector> {
        let mut out = vec![Detector::D0];
        out.extend(ArmOutcome::ALL.map(Detector::Babu));
        if mode == Mode::DoubleDelayedChoice {
            out.extend(ArmOutcome::ALL.map(Detector::Alisha));
        }
        out
    }

    pub fn label(self) -> &'static str {
        match self {
            Detector::D0 => "D0",
            Detector::Babu(o) => o.label(),
            Detector::Alisha(o) => o.primed_label(),
        }
    }

    pub fn parse(label: &str) -> Option<Detector> {
        if label == "D0" {
            return Some(Detector::D0);
        }
        let outcome = ArmOutcome::parse(label)?;
        Some(if label.ends_with('\'') {
            Detector::Alisha(outcome)
        } else {
            Detector::Babu(outcome)
        })
    }
}

impl fmt::Display for Detector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One detector firing. `x_bin` is present exactly for D0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EventRecord {
    pub event_id: u64,
    pub detector: Detector,
    pub time_ns: u64,
    pub x_bin: Option<usize>,
}

/// Where triples sit on the time axis: triple `t` has its signal detection
/// at `t * spacing_ns`, and `block_size` consecutive triples form a block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TimingLayout {
    pub spacing_ns: u64,
    pub block_size: usize,
}

impl TimingLayout {
    /// 1 us between triples at unit rate scale, never below 100 ns.
    pub fn new(pair_rate_scale: f64, block_size: usize) -> Self {
        let spacing = (BASE_SPACING_NS * pair_rate_scale).round();
        let spacing_ns = if spacing.is_finite() { (spacing as u64).max(MIN_SPACING_NS) } else { MIN_SPACING_NS };
        Self {
            spacing_ns,
            block_size: block_size.max(1),
        }
    }

    pub fn for_config(config: &ExperimentConfig, block_size: usize) -> Self {
        Self::new(config.pair_rate_scale, block_size)
    }

    pub fn block_at(&self, time_ns: u64) -> usize {
        (time_ns / self.spacing_ns) as usize / self.block_size
    }
}

/// Turns triples into a time-sorted detector stream: D0 at
/// `triple_id * spacing`, each idler 1-10 ns later. Delays come from the
/// delay stream of `seed`, two draws per triple in order (one in single
/// mode).
pub fn emit_events(triples: &[CoincidenceTriple], layout: &TimingLayout, seed: u64) -> Vec<EventRecord> {
    let mut rng = stream_rng(seed, DELAY_STREAM);
    let span = (MAX_DELAY_NS - MIN_DELAY_NS + 1) as usize;
    let mut out = Vec::with_capacity(triples.len() * 3);
    let mut group: Vec<(Detector, u64, Option<usize>)> = Vec::with_capacity(3);
    for t in triples {
        let t0 = t.triple_id * layout.spacing_ns;
        group.clear();
        group.push((Detector::D0, t0, Some(t.x_bin)));
        group.push((Detector::Babu(t.babu), t0 + MIN_DELAY_NS + below(&mut rng, span) as u64, None));
        if let Some(k) = t.alisha {
            group.push((Detector::Alisha(k), t0 + MIN_DELAY_NS + below(&mut rng, span) as u64, None));
        }
        group.sort_by_key(|&(_, time, _)| time);
        for &(detector, time_ns, x_bin) in &group {
            out.push(EventRecord {
                event_id: out.len() as u64,
                detector,
                time_ns,
                x_bin,
            });
        }
    }
    out
}
