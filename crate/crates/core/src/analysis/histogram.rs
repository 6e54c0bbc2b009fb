use std::fmt;

use crate::quantum::ArmOutcome;
use crate::sim::CoincidenceTriple;

/// Which coincidences feed a histogram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Selector {
    /// Babu's `j` together with Alisha's `k'`.
    Pair(ArmOutcome, ArmOutcome),
    /// Alisha's `k'`, whatever Babu saw.
    AlishaOnly(ArmOutcome),
    /// Babu's `j`, whatever Alisha saw (the only choice in single mode).
    BabuOnly(ArmOutcome),
    All,
}

impl Selector {
    pub fn accepts(&self, t: &CoincidenceTriple) -> bool {
        match *self {
            Selector::Pair(j, k) => t.babu == j && t.alisha == Some(k),
            Selector::AlishaOnly(k) => t.alisha == Some(k),
            Selector::BabuOnly(j) => t.babu == j,
            Selector::All => true,
        }
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selector::Pair(j, k) => write!(f, "pair({},{})", j.label(), k.primed_label()),
            Selector::AlishaOnly(k) => write!(f, "alisha_only({})", k.primed_label()),
            Selector::BabuOnly(j) => write!(f, "babu_only({})", j.label()),
            Selector::All => f.write_str("all"),
        }
    }
}

/// Signal-photon counts per screen bin for one selector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    pub counts: Vec<u64>,
    pub selector: Selector,
    pub total: u64,
}

impl Histogram {
    pub fn n_bins(&self) -> usize {
        self.counts.len()
    }

    /// Bin-wise sum of two histograms over disjoint selections.
    pub fn merged(&self, other: &Histogram, selector: Selector) -> Histogram {
        let counts: Vec<u64> = self.counts.iter().zip(&other.counts).map(|(a, b)| a + b).collect();
        Histogram {
            total: counts.iter().sum(),
            counts,
            selector,
        }
    }
}

pub fn build_histogram<'a>(
    triples: impl IntoIterator<Item = &'a CoincidenceTriple>,
    selector: Selector,
    n_bins: usize,
) -> Histogram {
    let mut counts = vec![0u64; n_bins];
    for t in triples.into_iter().filter(|t| selector.accepts(t)) {
        counts[t.x_bin] += 1;
    }
    Histogram {
        total: counts.iter().sum(),
        counts,
        selector,
    }
}
