use log::warn;
use rayon::prelude::*;

use super::fit::{classify_pattern, fit_fringe, DEFAULT_THRESHOLD};
use super::histogram::{build_histogram, Selector};
use crate::error::{Error, Result};
use crate::experiment::{nyquist_min_samples, SwitchSchedule};
use crate::quantum::{ArmOutcome, SlitScreenGeometry};
use crate::sim::CoincidenceTriple;

/// Per-block decoding of Babu's bits.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodeReport {
    pub selector: Selector,
    pub decoded_bits: Vec<u8>,
    pub true_bits: Vec<u8>,
    pub bit_error_rate: f64,
    pub per_block_visibility: Vec<f64>,
    pub per_block_stderr: Vec<f64>,
    /// Fraction of blocks whose visibility sits more than three standard
    /// errors from the decision threshold.
    pub confidence: f64,
    /// Block size below the sampling bound of the geometry.
    pub low_confidence: bool,
    pub warnings: Vec<String>,
}

impl DecodeReport {
    pub fn bit_errors(&self) -> usize {
        self.decoded_bits.iter().zip(&self.true_bits).filter(|(a, b)| a != b).count()
    }
}

fn decode(
    triples: &[CoincidenceTriple],
    schedule: &SwitchSchedule,
    geometry: &SlitScreenGeometry,
    selector: Selector,
) -> Result<DecodeReport> {
    let n_blocks = schedule.n_blocks();
    if n_blocks == 0 {
        return Err(Error::EmptySchedule);
    }
    let mut blocks: Vec<Vec<CoincidenceTriple>> = vec![Vec::new(); n_blocks];
    for t in triples {
        if let Some(b) = blocks.get_mut(t.block_index) {
            b.push(*t);
        }
    }

    let per_block: Vec<(u8, f64, f64, bool, Option<String>)> = blocks
        .par_iter()
        .enumerate()
        .map(|(i, block)| {
            let hist = build_histogram(block, selector, geometry.n_bins());
            match fit_fringe(&hist, geometry) {
                Ok(fit) => {
                    let bit = classify_pattern(&fit, DEFAULT_THRESHOLD).bit();
                    let decisive = (fit.visibility - DEFAULT_THRESHOLD).abs() > 3.0 * fit.visibility_stderr;
                    (bit, fit.visibility, fit.visibility_stderr, decisive, None)
                }
                Err(_) => (0, 0.0, 0.0, false, Some(format!("block {i}: no {selector} coincidences"))),
            }
        })
        .collect();

    let mut warnings = Vec::new();
    let needed = nyquist_min_samples(geometry);
    let low_confidence = schedule.block_size < needed;
    if low_confidence {
        let msg = format!(
            "block size {} is below the sampling bound ceil(2L/d) = {needed}",
            schedule.block_size
        );
        warn!("{msg}");
        warnings.push(msg);
    }
    warnings.extend(per_block.iter().filter_map(|p| p.4.clone()));

    let decoded_bits: Vec<u8> = per_block.iter().map(|p| p.0).collect();
    let errors = decoded_bits.iter().zip(&schedule.bits).filter(|(a, b)| a != b).count();
    Ok(DecodeReport {
        selector,
        true_bits: schedule.bits.clone(),
        bit_error_rate: errors as f64 / n_blocks as f64,
        per_block_visibility: per_block.iter().map(|p| p.1).collect(),
        per_block_stderr: per_block.iter().map(|p| p.2).collect(),
        confidence: per_block.iter().filter(|p| p.3).count() as f64 / n_blocks as f64,
        low_confidence,
        warnings,
        decoded_bits,
    })
}

/// Decodes with full access to both arms: each block's (D1, D1') slice.
pub fn decode_omniscient(
    triples: &[CoincidenceTriple],
    schedule: &SwitchSchedule,
    geometry: &SlitScreenGeometry,
) -> Result<DecodeReport> {
    decode(triples, schedule, geometry, Selector::Pair(ArmOutcome::D1, ArmOutcome::D1))
}

/// Decodes from Alisha's data alone: each block's D1' slice.
pub fn decode_alisha_only(
    triples: &[CoincidenceTriple],
    schedule: &SwitchSchedule,
    geometry: &SlitScreenGeometry,
) -> Result<DecodeReport> {
    decode(triples, schedule, geometry, Selector::AlishaOnly(ArmOutcome::D1))
}
