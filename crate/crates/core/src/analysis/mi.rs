//! Plug-in mutual information between Babu's bits and an observable.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::experiment::SwitchSchedule;
use crate::quantum::ArmOutcome;
use crate::sim::CoincidenceTriple;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MIEstimate {
    pub mi_bits: f64,
    /// First-order plug-in bias `(K - 1)(M - 1) / (2 n ln 2)`.
    pub bias_bound: f64,
    pub n_samples: usize,
    /// Distinct labels `K`.
    pub n_labels: usize,
    /// Distinct observed cells `M`.
    pub n_cells: usize,
}

/// Plug-in estimate of `I(label; observable)` in bits from paired samples.
pub fn mutual_information<O: Ord + Copy>(labels: &[u8], observables: &[O]) -> Result<MIEstimate> {
    if labels.len() != observables.len() {
        return Err(Error::LengthMismatch {
            labels: labels.len(),
            observables: observables.len(),
        });
    }
    let mut label_counts: BTreeMap<u8, usize> = BTreeMap::new();
    let mut cell_counts: BTreeMap<O, usize> = BTreeMap::new();
    let mut joint: BTreeMap<(u8, O), usize> = BTreeMap::new();
    for (&l, &o) in labels.iter().zip(observables) {
        *label_counts.entry(l).or_insert(0) += 1;
        *cell_counts.entry(o).or_insert(0) += 1;
        *joint.entry((l, o)).or_insert(0) += 1;
    }
    if label_counts.len() < 2 {
        return Err(Error::SingleLabel(label_counts.len()));
    }
    let n = labels.len() as f64;
    let mi_nats: f64 = joint
        .iter()
        .map(|(&(l, o), &c)| {
            let c = c as f64;
            let pl = label_counts[&l] as f64;
            let po = cell_counts[&o] as f64;
            (c / n) * (c * n / (pl * po)).ln()
        })
        .sum();
    let k = label_counts.len() as f64;
    let m = cell_counts.len() as f64;
    Ok(MIEstimate {
        mi_bits: (mi_nats / std::f64::consts::LN_2).max(0.0),
        bias_bound: (k - 1.0) * (m - 1.0) / (2.0 * n * std::f64::consts::LN_2),
        n_samples: labels.len(),
        n_labels: label_counts.len(),
        n_cells: cell_counts.len(),
    })
}

/// The bit Babu was sending when each triple was recorded.
pub fn bit_labels(triples: &[CoincidenceTriple], schedule: &SwitchSchedule) -> Vec<u8> {
    triples.iter().map(|t| schedule.bits.get(t.block_index).copied().unwrap_or(0)).collect()
}

/// What Alisha can see: screen bin and her own detector.
pub fn alisha_observables(triples: &[CoincidenceTriple]) -> Vec<(usize, Option<ArmOutcome>)> {
    triples.iter().map(|t| (t.x_bin, t.alisha)).collect()
}

/// Screen bin and both arms.
pub fn omniscient_observables(triples: &[CoincidenceTriple]) -> Vec<(usize, ArmOutcome, Option<ArmOutcome>)> {
    triples.iter().map(|t| (t.x_bin, t.babu, t.alisha)).collect()
}
