//! Randomised self-checks of the optics and the coincidence table.

use std::f64::consts::PI;
use std::path::Path as FsPath;

use super::{emit, ensure_dir, RunManifest};
use crate::analysis::tables::Table;
use crate::error::Result;
use crate::experiment::{single_choice_pattern, ExperimentConfig};
use crate::quantum::{
    alisha_marginal, arm_amplitudes, interference_phasor, joint_distribution, unitary_from_angle, Apparatus,
    ArmOptics, ArmOutcome, BeamSplitterUnitary, ComplexAmplitude, Mode, Path, SignalModel, NORMALIZATION_TOLERANCE,
    UNITARITY_TOLERANCE,
};
use crate::sim::rng::{stream_rng, uniform};

/// Residual tolerance for every check.
pub const CHECK_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub trials: usize,
    pub seed: u64,
    /// Replaces Babu's splitter with `(alpha, beta)` without validation.
    /// Used to confirm the checks catch a broken unitary.
    pub injected: Option<(ComplexAmplitude, ComplexAmplitude)>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            trials: 1000,
            seed: 0,
            injected: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub max_residual: f64,
    pub tolerance: f64,
    /// Parameters of the worst draw when the check fails.
    pub failing: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn table(&self) -> Table {
        let mut t = Table::new("verify", &["check", "passed", "max_residual", "tolerance", "failing"]);
        for c in &self.checks {
            t.push(vec![
                c.name.to_string(),
                c.passed.to_string(),
                format!("{:e}", c.max_residual),
                format!("{:e}", c.tolerance),
                c.failing.clone().unwrap_or_default(),
            ]);
        }
        t
    }
}

#[derive(Debug, Clone, Copy)]
struct Draw {
    babu: BeamSplitterUnitary,
    alisha: BeamSplitterUnitary,
    p: f64,
    p_alisha: f64,
    describe: (f64, f64, f64, f64),
}

impl Draw {
    fn label(&self) -> String {
        let (t, c, tp, cp) = self.describe;
        format!(
            "theta={t} chi={c} theta'={tp} chi'={cp} p={} p'={}",
            self.p, self.p_alisha
        )
    }
}

struct Tracker {
    name: &'static str,
    tolerance: f64,
    worst: f64,
    worst_label: Option<String>,
}

impl Tracker {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            tolerance,
            worst: 0.0,
            worst_label: None,
        }
    }

    fn record(&mut self, residual: f64, label: impl FnOnce() -> String) {
        // NaN counts as a failure.
        let residual = if residual.is_nan() { f64::INFINITY } else { residual };
        if residual > self.worst || self.worst_label.is_none() {
            self.worst = residual;
            self.worst_label = Some(label());
        }
    }

    fn finish(self) -> CheckResult {
        let passed = self.worst <= self.tolerance;
        CheckResult {
            name: self.name,
            passed,
            max_residual: self.worst,
            tolerance: self.tolerance,
            failing: if passed { None } else { self.worst_label },
        }
    }
}

fn max_abs_diff(a: &[[f64; 4]], b: &[[f64; 4]]) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(x, y)| x.iter().zip(y).map(|(u, v)| (u - v).abs()))
        .fold(0.0, f64::max)
}

fn draws(options: &VerifyOptions) -> Vec<Draw> {
    let mut rng = stream_rng(options.seed, 0);
    (0..options.trials.max(1))
        .map(|_| {
            let theta = uniform(&mut rng) * PI;
            let chi = uniform(&mut rng) * 2.0 * PI;
            let theta_p = uniform(&mut rng) * PI;
            let chi_p = uniform(&mut rng) * 2.0 * PI;
            let p = uniform(&mut rng);
            let p_alisha = uniform(&mut rng);
            let babu = match options.injected {
                Some((a, b)) => BeamSplitterUnitary::new_unchecked(a, b),
                None => unitary_from_angle(theta, chi),
            };
            Draw {
                babu,
                alisha: unitary_from_angle(theta_p, chi_p),
                p,
                p_alisha,
                describe: (theta, chi, theta_p, chi_p),
            }
        })
        .collect()
}

/// Runs every check over `options.trials` random settings on the geometry
/// and envelope of `config`.
pub fn verify_report(config: &ExperimentConfig, options: &VerifyOptions) -> Result<VerifyReport> {
    let geometry = config.geometry;
    let mut unitarity = Tracker::new("unitarity", UNITARITY_TOLERANCE);
    let mut isometry = Tracker::new("isometry", CHECK_TOLERANCE);
    let mut normalization = Tracker::new("normalization", NORMALIZATION_TOLERANCE);
    let mut cancellation = Tracker::new("cancellation", CHECK_TOLERANCE);
    let mut invariance = Tracker::new("marginal_invariance", CHECK_TOLERANCE);
    let mut flatness = Tracker::new("single_mode_flatness", CHECK_TOLERANCE);

    let all = draws(options);
    for (i, d) in all.iter().enumerate() {
        let label = || d.label();
        unitarity.record(d.babu.unitarity_error().max(d.alisha.unitarity_error()), label);

        // The arm amplitudes are built unvalidated so an injected splitter
        // reaches the downstream checks.
        let babu = ArmOptics::new(d.p, true, BeamSplitterUnitary::IDENTITY)?.with_unitary(d.babu);
        let alisha = ArmOptics::new(d.p_alisha, true, d.alisha)?;
        for arm in [&babu, &alisha] {
            let a = arm_amplitudes(Path::A, arm);
            let b = arm_amplitudes(Path::B, arm);
            let residual = (a.norm_sqr() - 1.0)
                .abs()
                .max((b.norm_sqr() - 1.0).abs())
                .max(a.inner(&b).norm());
            isometry.record(residual, label);
        }

        for j in ArmOutcome::ERASURE {
            let sum: ComplexAmplitude = ArmOutcome::ERASURE
                .iter()
                .map(|&k| interference_phasor(j, k, d.babu, d.alisha))
                .sum::<Result<ComplexAmplitude>>()?;
            cancellation.record(sum.norm(), label);
        }

        // Full tables are the expensive part, so only a prefix of the draws
        // is used for them.
        if i >= TABLE_TRIALS {
            continue;
        }
        let app = Apparatus::new(Mode::DoubleDelayedChoice, geometry, config.envelope, babu, alisha)?;
        let dist = joint_distribution(&app);
        normalization.record((dist.total() - 1.0).abs(), label);

        let reference = alisha_marginal(&dist)?;
        let other = all[(i + 1) % all.len()];
        let variants = [
            babu.with_splitter(false),
            babu.with_unitary(other.babu),
            babu.with_tap(other.p)?,
            ArmOptics::new(0.0, false, BeamSplitterUnitary::IDENTITY)?,
        ];
        for v in variants {
            let m = alisha_marginal(&joint_distribution(&app.with_babu(v)))?;
            invariance.record(max_abs_diff(&reference, &m), label);
        }

        let single = app.with_mode(Mode::SingleDelayedChoice);
        let d1 = single_choice_pattern(ArmOutcome::D1, &single)?;
        let d2 = single_choice_pattern(ArmOutcome::D2, &single)?;
        let signal = SignalModel::new(geometry, config.envelope)?;
        let residual = (0..geometry.n_bins())
            .map(|bin| (d1[bin] + d2[bin] - signal.envelope_weight(geometry.bin_center(bin))).abs())
            .fold(0.0, f64::max);
        flatness.record(residual, label);
    }

    let checks: Vec<CheckResult> = [unitarity, isometry, normalization, cancellation, invariance, flatness]
        .into_iter()
        .map(Tracker::finish)
        .collect();
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport { checks, passed })
}

/// Number of draws that also build full coincidence tables.
pub const TABLE_TRIALS: usize = 200;

/// Runs [`verify_report`] and writes `verify.csv`.
pub fn cmd_verify(
    config: &ExperimentConfig,
    config_path: &str,
    options: &VerifyOptions,
    out: &FsPath,
) -> Result<VerifyReport> {
    let report = verify_report(config, options)?;
    ensure_dir(out)?;
    let digest = config.digest();
    let mut manifest = RunManifest::new("verify", config_path, &digest, Some(options.seed));
    let table = report
        .table()
        .meta("config_digest", &digest)
        .meta("seed", options.seed)
        .meta("trials", options.trials);
    emit(out, "verify.csv", &table.render(), &mut manifest)?;
    manifest.write_to(out)?;
    Ok(report)
}
