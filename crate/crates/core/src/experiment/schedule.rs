use crate::error::{Error, Result};
use crate::quantum::ArmOptics;

/// Babu's message: one bit per block of `block_size` consecutive triples.
/// Bit 1 means his splitter is inserted, bit 0 removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchSchedule {
    pub bits: Vec<u8>,
    pub block_size: usize,
}

impl SwitchSchedule {
    pub fn new(bits: Vec<u8>, block_size: usize) -> Result<Self> {
        if block_size == 0 {
            return Err(Error::Schedule("block_size must be positive".into()));
        }
        if let Some(bad) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::Schedule(format!("bits must be 0 or 1, got {bad}")));
        }
        Ok(Self { bits, block_size })
    }

    pub fn n_blocks(&self) -> usize {
        self.bits.len()
    }

    pub fn total_triples(&self) -> usize {
        self.bits.len() * self.block_size
    }

    pub fn bit_for_triple(&self, triple: usize) -> Option<u8> {
        self.bits.get(triple / self.block_size).copied()
    }

    /// Bits as a compact `0`/`1` string.
    pub fn bit_string(&self) -> String {
        self.bits.iter().map(|b| if *b == 1 { '1' } else { '0' }).collect()
    }

    pub fn parse_bit_string(text: &str) -> Result<Vec<u8>> {
        text.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Schedule(format!("invalid bit character {other:?}"))),
            })
            .collect()
    }
}

/// Per-triple optics for Babu's arm: triple `t` has the splitter inserted iff
/// `bits[t / block_size] == 1`.
pub fn expand_schedule(schedule: &SwitchSchedule, babu: &ArmOptics) -> Result<Vec<ArmOptics>> {
    if schedule.bits.is_empty() {
        return Err(Error::EmptySchedule);
    }
    Ok(schedule
        .bits
        .iter()
        .flat_map(|&bit| std::iter::repeat_n(babu.with_splitter(bit == 1), schedule.block_size))
        .collect())
}

/// Recovers the bits from an expansion, checking every block is uniform.
pub fn schedule_from_expansion(expansion: &[ArmOptics], block_size: usize) -> Result<SwitchSchedule> {
    if block_size == 0 || !expansion.len().is_multiple_of(block_size) {
        return Err(Error::Schedule(format!(
            "expansion of length {} does not split into blocks of {block_size}",
            expansion.len()
        )));
    }
    let bits = expansion
        .chunks(block_size)
        .map(|block| {
            let present = block[0].splitter_present();
            if block.iter().any(|o| o.splitter_present() != present) {
                return Err(Error::Schedule("block mixes splitter settings".into()));
            }
            Ok(u8::from(present))
        })
        .collect::<Result<Vec<_>>>()?;
    SwitchSchedule::new(bits, block_size)
}
