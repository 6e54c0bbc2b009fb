//! Greedy earliest-first coincidence matching.
//!
//! A D0 record opens a window `[t0, t0 + window_ns]`. Each idler record is
//! given to the earliest open window whose slot for that arm is still empty;
//! a window closes once it has every arm it needs or time has moved past it.

use std::collections::{BTreeMap, VecDeque};

use super::events::{Detector, EventRecord, TimingLayout};
use super::sample::CoincidenceTriple;
use crate::error::{Error, Result};
use crate::quantum::Mode;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct MatchOutcome {
    pub triples: Vec<CoincidenceTriple>,
    /// Records that ended up in no triple, in stream order.
    pub orphans: Vec<EventRecord>,
}

impl MatchOutcome {
    pub fn orphan_counts(&self) -> BTreeMap<Detector, usize> {
        let mut counts = BTreeMap::new();
        for e in &self.orphans {
            *counts.entry(e.detector).or_insert(0) += 1;
        }
        counts
    }
}

struct Open {
    d0: usize,
    t0: u64,
    babu: Option<usize>,
    alisha: Option<usize>,
}

impl Open {
    fn complete(&self, mode: Mode) -> bool {
        self.babu.is_some() && (mode == Mode::SingleDelayedChoice || self.alisha.is_some())
    }
}

pub fn match_coincidences(
    stream: &[EventRecord],
    window_ns: u64,
    layout: &TimingLayout,
    mode: Mode,
) -> Result<MatchOutcome> {
    if let Some(i) = stream.windows(2).position(|w| w[1].time_ns < w[0].time_ns) {
        return Err(Error::UnsortedStream { index: i + 1 });
    }

    let mut open: VecDeque<Open> = VecDeque::new();
    let mut used = vec![false; stream.len()];
    let mut triples = Vec::new();

    let finish = |cand: Open, used: &mut [bool], triples: &mut Vec<CoincidenceTriple>| {
        if !cand.complete(mode) {
            return;
        }
        let outcome = |idx: usize| match stream[idx].detector {
            Detector::Babu(o) | Detector::Alisha(o) => o,
            Detector::D0 => unreachable!("slots only hold idler records"),
        };
        used[cand.d0] = true;
        let babu = cand.babu.expect("complete");
        used[babu] = true;
        let alisha = cand.alisha.map(|idx| {
            used[idx] = true;
            outcome(idx)
        });
        triples.push(CoincidenceTriple {
            triple_id: triples.len() as u64,
            block_index: layout.block_at(cand.t0),
            x_bin: stream[cand.d0].x_bin.expect("D0 records carry a bin"),
            babu: outcome(babu),
            alisha,
        });
    };

    for (idx, rec) in stream.iter().enumerate() {
        while open.front().is_some_and(|c| c.t0.saturating_add(window_ns) < rec.time_ns || c.complete(mode)) {
            let cand = open.pop_front().expect("front exists");
            finish(cand, &mut used, &mut triples);
        }
        match rec.detector {
            Detector::D0 => {
                if rec.x_bin.is_some() {
                    open.push_back(Open {
                        d0: idx,
                        t0: rec.time_ns,
                        babu: None,
                        alisha: None,
                    });
                }
            }
            Detector::Babu(_) => {
                if let Some(c) = open
                    .iter_mut()
                    .find(|c| c.babu.is_none() && rec.time_ns - c.t0 <= window_ns)
                {
                    c.babu = Some(idx);
                }
            }
            Detector::Alisha(_) if mode == Mode::DoubleDelayedChoice => {
                if let Some(c) = open
                    .iter_mut()
                    .find(|c| c.alisha.is_none() && rec.time_ns - c.t0 <= window_ns)
                {
                    c.alisha = Some(idx);
                }
            }
            Detector::Alisha(_) => {}
        }
    }
    while let Some(cand) = open.pop_front() {
        finish(cand, &mut used, &mut triples);
    }

    let orphans = stream
        .iter()
        .zip(&used)
        .filter(|(_, &u)| !u)
        .map(|(e, _)| *e)
        .collect();
    Ok(MatchOutcome { triples, orphans })
}
