use std::path::Path as FsPath;

use super::{emit, ensure_dir, RunManifest};
use crate::analysis::tables::{decode_table, mi_table};
use crate::analysis::{
    alisha_observables, bit_labels, decode_alisha_only, decode_omniscient, mutual_information,
    omniscient_observables, DecodeReport, MIEstimate,
};
use crate::error::{Error, Result};
use crate::experiment::ExperimentConfig;
use crate::quantum::Mode;
use crate::sim::TriplesFile;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodeMode {
    Omniscient,
    Alisha,
}

impl DecodeMode {
    pub fn name(self) -> &'static str {
        match self {
            DecodeMode::Omniscient => "omniscient",
            DecodeMode::Alisha => "alisha",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecodeOutcome {
    pub report: DecodeReport,
    /// `None` when the run carries a single bit value.
    pub mutual_information: Option<MIEstimate>,
    pub report_path: std::path::PathBuf,
}

/// Decodes a triples file written by `simulate` for the same config. Writes
/// `decode_<mode>.csv` and `mi_<mode>.csv`.
pub fn cmd_decode(
    config: &ExperimentConfig,
    config_path: &str,
    triples_path: &FsPath,
    mode: DecodeMode,
    out: &FsPath,
) -> Result<DecodeOutcome> {
    if config.mode != Mode::DoubleDelayedChoice {
        return Err(Error::WrongMode {
            expected: "double_delayed_choice",
        });
    }
    let file = TriplesFile::read_from(triples_path)?;
    let digest = config.digest();
    if file.header.config_digest != digest {
        return Err(Error::DigestMismatch {
            expected: digest,
            found: file.header.config_digest,
        });
    }
    let schedule = file.header.schedule()?;
    let report = match mode {
        DecodeMode::Omniscient => decode_omniscient(&file.triples, &schedule, &config.geometry)?,
        DecodeMode::Alisha => decode_alisha_only(&file.triples, &schedule, &config.geometry)?,
    };
    let labels = bit_labels(&file.triples, &schedule);
    let mi = match mode {
        DecodeMode::Omniscient => mutual_information(&labels, &omniscient_observables(&file.triples)),
        DecodeMode::Alisha => mutual_information(&labels, &alisha_observables(&file.triples)),
    };
    let mi = match mi {
        Ok(est) => Some(est),
        Err(Error::SingleLabel(_)) => None,
        Err(e) => return Err(e),
    };

    ensure_dir(out)?;
    let mut manifest = RunManifest::new(&format!("decode_{}", mode.name()), config_path, &digest, Some(file.header.seed));
    let table = decode_table(&report)
        .meta("config_digest", &digest)
        .meta("seed", file.header.seed)
        .meta("mode", mode.name());
    let report_path = emit(out, &format!("decode_{}.csv", mode.name()), &table.render(), &mut manifest)?;
    if let Some(est) = &mi {
        let t = mi_table(mode.name(), est).meta("config_digest", &digest);
        emit(out, &format!("mi_{}.csv", mode.name()), &t.render(), &mut manifest)?;
    }
    manifest.write_to(out)?;
    Ok(DecodeOutcome {
        report,
        mutual_information: mi,
        report_path,
    })
}
