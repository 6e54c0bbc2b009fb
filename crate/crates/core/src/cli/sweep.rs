//! Grid sweep over both splitters and both tap probabilities.

use std::f64::consts::PI;
use std::path::Path as FsPath;

use rayon::prelude::*;

use super::{emit, ensure_dir, RunManifest};
use crate::analysis::fit_profile;
use crate::analysis::tables::Table;
use crate::error::{Error, Result};
use crate::experiment::ExperimentConfig;
use crate::quantum::{
    alisha_marginal, joint_distribution, unitary_from_angle, Apparatus, ArmOptics, ArmOutcome, BeamSplitterUnitary,
    Mode, SignalModel,
};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub theta: Vec<f64>,
    pub chi: Vec<f64>,
    pub theta_p: Vec<f64>,
    pub chi_p: Vec<f64>,
    pub p: Vec<f64>,
    pub p_p: Vec<f64>,
}

impl Default for SweepGrid {
    /// 128 points. Includes `theta = 0` (Babu keeps which-path) and the
    /// balanced `theta = theta' = pi/4`.
    fn default() -> Self {
        Self {
            theta: vec![0.0, 0.15 * PI, 0.25 * PI, 0.4 * PI],
            chi: vec![0.0, 0.6 * PI],
            theta_p: vec![0.25 * PI, 0.35 * PI],
            chi_p: vec![0.0, 1.3 * PI],
            p: vec![0.0, 0.4],
            p_p: vec![0.1, 0.7],
        }
    }
}

impl SweepGrid {
    pub fn len(&self) -> usize {
        self.theta.len() * self.chi.len() * self.theta_p.len() * self.chi_p.len() * self.p.len() * self.p_p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(theta, chi, theta', chi', p, p')` in row-major order.
    pub fn points(&self) -> Vec<[f64; 6]> {
        let mut out = Vec::with_capacity(self.len());
        for &t in &self.theta {
            for &c in &self.chi {
                for &tp in &self.theta_p {
                    for &cp in &self.chi_p {
                        for &p in &self.p {
                            for &pp in &self.p_p {
                                out.push([t, c, tp, cp, p, pp]);
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Erasure pairs in the order of [`SweepRow::pair_visibility`].
pub const SWEEP_PAIRS: [(ArmOutcome, ArmOutcome); 4] = [
    (ArmOutcome::D1, ArmOutcome::D1),
    (ArmOutcome::D1, ArmOutcome::D2),
    (ArmOutcome::D2, ArmOutcome::D1),
    (ArmOutcome::D2, ArmOutcome::D2),
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub point: [f64; 6],
    /// Fringe visibility of each erasure slice, envelope divided out.
    pub pair_visibility: [f64; 4],
    /// Visibility of Alisha's D1' and D2' marginals.
    pub marginal_visibility: [f64; 2],
    /// Largest `|sum_k (j, k') slice - which-path-free clump|` over j and x,
    /// i.e. how far the erasure slices fail to cancel.
    pub cancellation_residual: f64,
    /// Largest difference between Alisha's marginal and the marginal with
    /// Babu's splitter removed or his arm replaced by a bare identity.
    pub marginal_residual: f64,
}

fn flat_profile(slice: &[f64], signal: &SignalModel) -> Vec<f64> {
    let g = signal.geometry();
    slice
        .iter()
        .enumerate()
        .map(|(bin, p)| p / signal.envelope_weight(g.bin_center(bin)))
        .collect()
}

fn visibility(profile: &[f64], signal: &SignalModel) -> Result<f64> {
    match fit_profile(profile, signal.geometry()) {
        Ok(f) => Ok(f.visibility),
        Err(Error::EmptyHistogram) => Ok(0.0),
        Err(e) => Err(e),
    }
}

fn sweep_point(config: &ExperimentConfig, point: [f64; 6]) -> Result<SweepRow> {
    let [theta, chi, theta_p, chi_p, p, p_p] = point;
    let babu = ArmOptics::new(p, true, unitary_from_angle(theta, chi))?;
    let alisha = ArmOptics::new(p_p, true, unitary_from_angle(theta_p, chi_p))?;
    let app = Apparatus::new(Mode::DoubleDelayedChoice, config.geometry, config.envelope, babu, alisha)?;
    let signal = SignalModel::new(config.geometry, config.envelope)?;
    let dist = joint_distribution(&app);
    let n_bins = config.geometry.n_bins();

    let mut pair_visibility = [0.0; 4];
    for (slot, &(j, k)) in SWEEP_PAIRS.iter().enumerate() {
        pair_visibility[slot] = visibility(&flat_profile(&dist.slice(j, Some(k)), &signal), &signal)?;
    }

    // Summing Alisha's erasure outcomes must leave a fringe-free profile
    // proportional to the envelope.
    let mut cancellation_residual: f64 = 0.0;
    for j in ArmOutcome::ERASURE {
        let d1 = flat_profile(&dist.slice(j, Some(ArmOutcome::D1)), &signal);
        let d2 = flat_profile(&dist.slice(j, Some(ArmOutcome::D2)), &signal);
        let level = (1.0 - p) * (1.0 - p_p) * 0.5 * babu.unitary().norm_sqr();
        for bin in 0..n_bins {
            cancellation_residual = cancellation_residual.max(((d1[bin] + d2[bin]) - level).abs());
        }
    }

    let marginal = alisha_marginal(&dist)?;
    let mut marginal_visibility = [0.0; 2];
    for (slot, k) in ArmOutcome::ERASURE.into_iter().enumerate() {
        let column: Vec<f64> = marginal.iter().map(|row| row[k.index()]).collect();
        marginal_visibility[slot] = visibility(&flat_profile(&column, &signal), &signal)?;
    }

    let references = [
        babu.with_splitter(false),
        ArmOptics::new(0.0, false, BeamSplitterUnitary::IDENTITY)?,
    ];
    let mut marginal_residual: f64 = 0.0;
    for reference in references {
        let other = alisha_marginal(&joint_distribution(&app.with_babu(reference)))?;
        for (a, b) in marginal.iter().zip(&other) {
            for (u, v) in a.iter().zip(b) {
                marginal_residual = marginal_residual.max((u - v).abs());
            }
        }
    }

    Ok(SweepRow {
        point,
        pair_visibility,
        marginal_visibility,
        cancellation_residual,
        marginal_residual,
    })
}

/// Evaluates every grid point on the geometry and envelope of `config`.
pub fn sweep_rows(config: &ExperimentConfig, grid: &SweepGrid) -> Result<Vec<SweepRow>> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    grid.points().into_par_iter().map(|pt| sweep_point(config, pt)).collect()
}

pub fn sweep_table(rows: &[SweepRow]) -> Table {
    let mut t = Table::new(
        "splitter sweep",
        &[
            "theta",
            "chi",
            "theta_p",
            "chi_p",
            "p",
            "p_p",
            "vis_D1_D1p",
            "vis_D1_D2p",
            "vis_D2_D1p",
            "vis_D2_D2p",
            "marginal_vis_D1p",
            "marginal_vis_D2p",
            "cancellation_residual",
            "marginal_residual",
        ],
    );
    for r in rows {
        let mut cells: Vec<String> = r.point.iter().map(|v| v.to_string()).collect();
        cells.extend(r.pair_visibility.iter().map(|v| format!("{v:.12}")));
        cells.extend(r.marginal_visibility.iter().map(|v| format!("{v:.12}")));
        cells.push(format!("{:e}", r.cancellation_residual));
        cells.push(format!("{:e}", r.marginal_residual));
        t.push(cells);
    }
    t
}

/// Runs the sweep and writes `sweep.csv`.
pub fn cmd_sweep(config: &ExperimentConfig, config_path: &str, grid: &SweepGrid, out: &FsPath) -> Result<Vec<SweepRow>> {
    let rows = sweep_rows(config, grid)?;
    ensure_dir(out)?;
    let digest = config.digest();
    let mut manifest = RunManifest::new("sweep", config_path, &digest, None);
    let table = sweep_table(&rows).meta("config_digest", &digest).meta("points", rows.len());
    emit(out, "sweep.csv", &table.render(), &mut manifest)?;
    manifest.write_to(out)?;
    Ok(rows)
}
