use rayon::prelude::*;

use super::rng::{stream_rng, uniform};
use crate::error::Result;
use crate::experiment::{ExperimentConfig, SwitchSchedule};
use crate::quantum::{joint_distribution, Apparatus, ArmOutcome, CoincidenceDistribution, Mode};

/// One simulated signal/idler/idler detection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoincidenceTriple {
    pub triple_id: u64,
    pub block_index: usize,
    pub x_bin: usize,
    pub babu: ArmOutcome,
    /// `None` in single delayed-choice mode.
    pub alisha: Option<ArmOutcome>,
}

/// Inverse-CDF sampler for one coincidence table.
///
/// In double mode Alisha's observable `(bin, k)` is drawn from her marginal
/// first and Babu's outcome from the conditional, which is an exact draw from
/// the joint table.
#[derive(Debug, Clone)]
pub struct TripleSampler {
    mode: Mode,
    outer: Vec<f64>,
    inner: Vec<[f64; 4]>,
}

fn cumulative(weights: impl Iterator<Item = f64>) -> Vec<f64> {
    weights
        .scan(0.0, |acc, w| {
            *acc += w;
            Some(*acc)
        })
        .collect()
}

fn locate(cdf: &[f64], u: f64) -> usize {
    let target = u * cdf[cdf.len() - 1];
    cdf.partition_point(|&c| c <= target).min(cdf.len() - 1)
}

impl TripleSampler {
    pub fn new(dist: &CoincidenceDistribution) -> Self {
        let n_bins = dist.n_bins();
        match dist.mode() {
            Mode::DoubleDelayedChoice => {
                let mut weights = Vec::with_capacity(n_bins * 4);
                let mut inner = Vec::with_capacity(n_bins * 4);
                for bin in 0..n_bins {
                    for k in ArmOutcome::ALL {
                        let row: Vec<f64> = ArmOutcome::ALL.iter().map(|&j| dist.prob(bin, j, Some(k))).collect();
                        let c = cumulative(row.into_iter());
                        weights.push(c[3]);
                        inner.push([c[0], c[1], c[2], c[3]]);
                    }
                }
                Self {
                    mode: Mode::DoubleDelayedChoice,
                    outer: cumulative(weights.into_iter()),
                    inner,
                }
            }
            Mode::SingleDelayedChoice => Self {
                mode: Mode::SingleDelayedChoice,
                outer: cumulative(
                    (0..n_bins).flat_map(|bin| ArmOutcome::ALL.into_iter().map(move |j| (bin, j))).map(|(bin, j)| dist.prob(bin, j, None)),
                ),
                inner: Vec::new(),
            },
        }
    }

    /// Draws `(bin, babu, alisha)`.
    pub fn draw(&self, rng: &mut impl rand_core::RngCore) -> (usize, ArmOutcome, Option<ArmOutcome>) {
        let cell = locate(&self.outer, uniform(rng));
        match self.mode {
            Mode::DoubleDelayedChoice => {
                let j = locate(&self.inner[cell], uniform(rng));
                (cell / 4, ArmOutcome::ALL[j], Some(ArmOutcome::ALL[cell % 4]))
            }
            Mode::SingleDelayedChoice => (cell / 4, ArmOutcome::ALL[cell % 4], None),
        }
    }
}

/// Samples every block of `schedule`, Babu's splitter following the block's
/// bit. Block `b` draws from RNG stream `b`.
pub fn sample_triples_with(apparatus: &Apparatus, schedule: &SwitchSchedule, seed: u64) -> Vec<CoincidenceTriple> {
    let samplers = [false, true].map(|present| {
        TripleSampler::new(&joint_distribution(&apparatus.with_babu(apparatus.babu.with_splitter(present))))
    });
    let n = schedule.block_size;
    schedule
        .bits
        .par_iter()
        .enumerate()
        .map(|(block, &bit)| {
            let sampler = &samplers[usize::from(bit == 1)];
            let mut rng = stream_rng(seed, block as u64);
            (0..n)
                .map(|t| {
                    let (x_bin, babu, alisha) = sampler.draw(&mut rng);
                    CoincidenceTriple {
                        triple_id: (block * n + t) as u64,
                        block_index: block,
                        x_bin,
                        babu,
                        alisha,
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Validates `config` and samples the schedule.
pub fn sample_triples(config: &ExperimentConfig, schedule: &SwitchSchedule, seed: u64) -> Result<Vec<CoincidenceTriple>> {
    config.validate()?;
    let apparatus = config.apparatus()?;
    Ok(sample_triples_with(&apparatus, schedule, seed))
}
