use std::path::Path as FsPath;

use super::{emit, ensure_dir, RunManifest};
use crate::analysis::tables::Table;
use crate::error::Result;
use crate::experiment::{single_choice_pattern, ExperimentConfig};
use crate::quantum::{alisha_marginal, joint_distribution, ArmOutcome, Mode};

/// The exact tables written by [`cmd_patterns`].
#[derive(Debug, Clone, PartialEq)]
pub struct PatternTables {
    /// Joint probabilities for every detector pair.
    pub joint: Table,
    /// Each pair's screen profile normalised to unit sum.
    pub conditional: Table,
    /// Alisha's marginal (double mode only).
    pub marginal: Option<Table>,
    /// Single delayed-choice D1/D2 patterns, normalised jointly.
    pub single: Table,
}

fn pair_label(j: ArmOutcome, k: Option<ArmOutcome>) -> String {
    match k {
        Some(k) => format!("{}|{}", j.label(), k.primed_label()),
        None => j.label().to_string(),
    }
}

pub fn pattern_tables(config: &ExperimentConfig) -> Result<PatternTables> {
    let apparatus = config.apparatus()?;
    let geometry = config.geometry;
    let digest = config.digest();
    let dist = joint_distribution(&apparatus);
    let pairs: Vec<(ArmOutcome, Option<ArmOutcome>)> = ArmOutcome::ALL
        .iter()
        .flat_map(|&j| config.mode.alisha_slots().iter().map(move |&k| (j, k)))
        .collect();

    let mut columns = vec!["bin_center_m".to_string()];
    columns.extend(pairs.iter().map(|&(j, k)| pair_label(j, k)));
    let column_refs: Vec<&str> = columns.iter().map(String::as_str).collect();

    let mut joint = Table::new("joint coincidence probabilities", &column_refs)
        .meta("config_digest", &digest)
        .meta("mode", config.mode.name());
    let mut conditional = Table::new("conditional screen patterns", &column_refs)
        .meta("config_digest", &digest)
        .meta("mode", config.mode.name());
    let conditionals: Vec<Vec<f64>> = pairs
        .iter()
        .map(|&(j, k)| dist.conditional(j, k).unwrap_or_else(|| vec![0.0; geometry.n_bins()]))
        .collect();
    for bin in 0..geometry.n_bins() {
        let x = geometry.bin_center(bin).to_string();
        let mut row = vec![x.clone()];
        row.extend(pairs.iter().map(|&(j, k)| dist.prob(bin, j, k).to_string()));
        joint.push(row);
        let mut row = vec![x];
        row.extend(conditionals.iter().map(|c| c[bin].to_string()));
        conditional.push(row);
    }

    let marginal = match config.mode {
        Mode::DoubleDelayedChoice => {
            let m = alisha_marginal(&dist)?;
            let mut t = Table::new("alisha marginal", &["bin_center_m", "D1'", "D2'", "D3'", "D4'"])
                .meta("config_digest", &digest);
            for (bin, row) in m.iter().enumerate() {
                let mut cells = vec![geometry.bin_center(bin).to_string()];
                cells.extend(row.iter().map(|p| p.to_string()));
                t.push(cells);
            }
            Some(t)
        }
        Mode::SingleDelayedChoice => None,
    };

    let single_app = apparatus.with_mode(Mode::SingleDelayedChoice);
    let d1 = single_choice_pattern(ArmOutcome::D1, &single_app)?;
    let d2 = single_choice_pattern(ArmOutcome::D2, &single_app)?;
    let mut single = Table::new("single delayed-choice patterns", &["bin_center_m", "D1", "D2"])
        .meta("config_digest", &digest);
    for bin in 0..geometry.n_bins() {
        single.push(vec![geometry.bin_center(bin).to_string(), d1[bin].to_string(), d2[bin].to_string()]);
    }

    Ok(PatternTables {
        joint,
        conditional,
        marginal,
        single,
    })
}

/// Writes `joint_patterns.csv`, `conditional_patterns.csv`,
/// `alisha_marginal.csv` (double mode) and `single_patterns.csv`.
pub fn cmd_patterns(config: &ExperimentConfig, config_path: &str, out: &FsPath) -> Result<PatternTables> {
    let tables = pattern_tables(config)?;
    ensure_dir(out)?;
    let mut manifest = RunManifest::new("patterns", config_path, &config.digest(), None);
    emit(out, "joint_patterns.csv", &tables.joint.render(), &mut manifest)?;
    emit(out, "conditional_patterns.csv", &tables.conditional.render(), &mut manifest)?;
    if let Some(m) = &tables.marginal {
        emit(out, "alisha_marginal.csv", &m.render(), &mut manifest)?;
    }
    emit(out, "single_patterns.csv", &tables.single.render(), &mut manifest)?;
    manifest.write_to(out)?;
    Ok(tables)
}
