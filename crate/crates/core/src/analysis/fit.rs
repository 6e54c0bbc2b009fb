//! Fixed-frequency fringe fit.
//!
//! Profiles are fitted to `c0 + a cos(k x) + b sin(k x)` at the bin centres
//! with `k = 4 pi d / (lambda f)`, so `cos^2(2 pi x d / lambda f)` lies
//! exactly in the model. The amplitude is `c1 = sqrt(a^2 + b^2)`, the phase
//! `atan2(b, a)` and the visibility `c1 / c0`.
//!
//! Estimates come from iteratively reweighted least squares with Poisson
//! variances taken from the current model; standard errors use the same
//! weights.

use log::warn;
use nalgebra::{Matrix3, Vector3};

use super::histogram::Histogram;
use crate::error::{Error, Result};
use crate::experiment::nyquist_min_samples;
use crate::quantum::SlitScreenGeometry;

pub const DEFAULT_THRESHOLD: f64 = 0.5;

/// Significance an amplitude needs before a pattern counts as interference.
pub const AMPLITUDE_SIGMAS: f64 = 3.0;

const REWEIGHT_ROUNDS: usize = 3;

/// Lower bound on model variance, as a fraction of the mean level.
const VARIANCE_FLOOR: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FringeFit {
    pub mean_level: f64,
    pub amplitude: f64,
    pub phase: f64,
    pub visibility: f64,
    /// Standard error of `amplitude`.
    pub standard_error: f64,
    pub visibility_stderr: f64,
    /// Fewer samples than the sampling bound of the geometry.
    pub undersampled: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternClass {
    Interference,
    Clump,
}

impl PatternClass {
    pub fn bit(self) -> u8 {
        match self {
            PatternClass::Interference => 1,
            PatternClass::Clump => 0,
        }
    }
}

fn weighted_solve(design: &[Vector3<f64>], values: &[f64], weights: &[f64]) -> Result<(Vector3<f64>, Matrix3<f64>)> {
    let mut normal = Matrix3::zeros();
    let mut rhs = Vector3::zeros();
    for ((row, &y), &w) in design.iter().zip(values).zip(weights) {
        normal += row * row.transpose() * w;
        rhs += row * (w * y);
    }
    let inverse = normal.try_inverse().ok_or(Error::SingularFit)?;
    Ok((inverse * rhs, inverse))
}

/// Fits any non-negative profile sampled at the bin centres of `geometry`.
pub fn fit_profile(values: &[f64], geometry: &SlitScreenGeometry) -> Result<FringeFit> {
    if values.len() != geometry.n_bins() {
        return Err(Error::BinIndex {
            index: values.len(),
            n_bins: geometry.n_bins(),
        });
    }
    let total: f64 = values.iter().sum();
    if total.is_nan() || total <= 0.0 {
        return Err(Error::EmptyHistogram);
    }
    let k = geometry.fringe_wavenumber();
    let design: Vec<Vector3<f64>> = geometry
        .bin_centers()
        .into_iter()
        .map(|x| Vector3::new(1.0, (k * x).cos(), (k * x).sin()))
        .collect();

    let mut weights = vec![1.0; values.len()];
    let (mut coef, mut inverse) = weighted_solve(&design, values, &weights)?;
    for _ in 0..REWEIGHT_ROUNDS {
        let floor = VARIANCE_FLOOR * coef[0].abs().max(total / values.len() as f64);
        for (w, row) in weights.iter_mut().zip(&design) {
            *w = 1.0 / row.dot(&coef).max(floor);
        }
        (coef, inverse) = weighted_solve(&design, values, &weights)?;
    }

    let (c0, a, b) = (coef[0], coef[1], coef[2]);
    let amplitude = a.hypot(b);
    let phase = b.atan2(a);
    let cov = inverse;
    let standard_error = if amplitude > 0.0 {
        let g = Vector3::new(0.0, a / amplitude, b / amplitude);
        (g.transpose() * cov * g)[0].max(0.0).sqrt()
    } else {
        (0.5 * (cov[(1, 1)] + cov[(2, 2)])).max(0.0).sqrt()
    };
    let (visibility, visibility_stderr) = if c0 > 0.0 {
        let v = amplitude / c0;
        let g = if amplitude > 0.0 {
            Vector3::new(-amplitude / (c0 * c0), a / (c0 * amplitude), b / (c0 * amplitude))
        } else {
            Vector3::new(0.0, 1.0 / c0, 0.0)
        };
        (v.clamp(0.0, 1.0), (g.transpose() * cov * g)[0].max(0.0).sqrt())
    } else {
        (0.0, f64::INFINITY)
    };
    Ok(FringeFit {
        mean_level: c0,
        amplitude,
        phase,
        visibility,
        standard_error,
        visibility_stderr,
        undersampled: false,
    })
}

/// Fits a count histogram. Warns when it holds fewer samples than
/// `ceil(2 L / d)`.
pub fn fit_fringe(hist: &Histogram, geometry: &SlitScreenGeometry) -> Result<FringeFit> {
    if hist.total == 0 {
        return Err(Error::EmptyHistogram);
    }
    let values: Vec<f64> = hist.counts.iter().map(|&c| c as f64).collect();
    let mut fit = fit_profile(&values, geometry)?;
    let needed = nyquist_min_samples(geometry);
    if (hist.total as usize) < needed {
        warn!("{}: {} samples is below the sampling bound of {needed}", hist.selector, hist.total);
        fit.undersampled = true;
    }
    Ok(fit)
}

/// Interference iff the visibility strictly exceeds `threshold` and the
/// amplitude is more than three standard errors from zero.
pub fn classify_pattern(fit: &FringeFit, threshold: f64) -> PatternClass {
    if fit.visibility > threshold && fit.amplitude > AMPLITUDE_SIGMAS * fit.standard_error {
        PatternClass::Interference
    } else {
        PatternClass::Clump
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::histogram::Selector;
    use std::f64::consts::PI;

    fn geom() -> SlitScreenGeometry {
        SlitScreenGeometry::new(1e-4, 7.02e-7, 1.0, 0.02, 256).unwrap()
    }

    fn profile(f: impl Fn(f64) -> f64) -> Vec<f64> {
        geom().bin_centers().into_iter().map(f).collect()
    }

    #[test]
    fn noiseless_cos2() {
        let g = geom();
        let fit = fit_profile(&profile(|x| g.slit_phase(x).cos().powi(2)), &g).unwrap();
        assert!((fit.visibility - 1.0).abs() < 1e-9);
        assert!(fit.phase.abs() < 1e-6);
        assert!((fit.mean_level - 0.5).abs() < 1e-9);
    }

    #[test]
    fn noiseless_flat() {
        let g = geom();
        let fit = fit_profile(&profile(|_| 3.0), &g).unwrap();
        assert!(fit.visibility < 1e-9);
        assert_eq!(classify_pattern(&fit, DEFAULT_THRESHOLD), PatternClass::Clump);
    }

    #[test]
    fn sin2_is_offset_by_pi() {
        let g = geom();
        let cos = fit_profile(&profile(|x| g.slit_phase(x).cos().powi(2)), &g).unwrap();
        let sin = fit_profile(&profile(|x| g.slit_phase(x).sin().powi(2)), &g).unwrap();
        assert!((sin.visibility - 1.0).abs() < 1e-9);
        let diff = (sin.phase - cos.phase).rem_euclid(2.0 * PI);
        assert!((diff - PI).abs() < 1e-6, "{diff}");
    }

    #[test]
    fn recovers_generating_phase() {
        let g = geom();
        for phi in [-2.0, -0.4, 0.3, 1.2, 2.9] {
            let k = g.fringe_wavenumber();
            let fit = fit_profile(&profile(|x| 1.0 + 0.6 * (k * x - phi).cos()), &g).unwrap();
            assert!((fit.phase - phi).abs() < 1e-6);
            assert!((fit.visibility - 0.6).abs() < 1e-9);
        }
    }

    #[test]
    fn empty_histogram_is_an_error() {
        let h = Histogram {
            counts: vec![0; 256],
            selector: Selector::All,
            total: 0,
        };
        assert!(matches!(fit_fringe(&h, &geom()), Err(Error::EmptyHistogram)));
    }

    #[test]
    fn undersampled_flag() {
        let g = geom();
        let mut counts = vec![0u64; 256];
        counts[10] = 5;
        counts[100] = 7;
        let h = Histogram {
            total: 12,
            counts,
            selector: Selector::All,
        };
        assert!(fit_fringe(&h, &g).unwrap().undersampled);
    }

    #[test]
    fn threshold_is_strict() {
        let fit = FringeFit {
            mean_level: 1.0,
            amplitude: 0.5,
            phase: 0.0,
            visibility: 0.5,
            standard_error: 0.01,
            visibility_stderr: 0.01,
            undersampled: false,
        };
        assert_eq!(classify_pattern(&fit, 0.5), PatternClass::Clump);
        let sharper = FringeFit { visibility: 0.98, amplitude: 0.98, ..fit };
        assert_eq!(classify_pattern(&sharper, 0.5), PatternClass::Interference);
        let noisy = FringeFit { standard_error: 0.4, ..sharper };
        assert_eq!(classify_pattern(&noisy, 0.5), PatternClass::Clump);
    }
}
