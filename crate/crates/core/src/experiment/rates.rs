//! Closed-form conditional rates for the balanced set-up and the
//! single delayed-choice conditionals.

use crate::error::{Error, Result};
use crate::quantum::{joint_distribution, Apparatus, ArmOutcome, Mode, SlitScreenGeometry};

/// Shape of the `(j, k')` coincidence rate at `x` for balanced splitters on
/// both arms and a uniform envelope, scaled to peak at 1:
/// `cos^2(2 pi x d / lambda f)` for (D1, D1') and (D2, D2'), `sin^2` for the
/// mixed erasure pairs, and flat whenever a which-path detector fires.
pub fn ideal_rate(j: ArmOutcome, k: ArmOutcome, x: f64, geometry: &SlitScreenGeometry) -> f64 {
    if j.is_which_path() || k.is_which_path() {
        return 1.0;
    }
    let phase = geometry.slit_phase(x);
    if j == k {
        phase.cos().powi(2)
    } else {
        phase.sin().powi(2)
    }
}

/// Single delayed-choice counterpart: D1 gives antifringes `sin^2`, D2
/// fringes `cos^2`, D3/D4 the flat clump.
pub fn ideal_single_rate(j: ArmOutcome, x: f64, geometry: &SlitScreenGeometry) -> f64 {
    let phase = geometry.slit_phase(x);
    match j {
        ArmOutcome::D1 => phase.sin().powi(2),
        ArmOutcome::D2 => phase.cos().powi(2),
        ArmOutcome::D3 | ArmOutcome::D4 => 1.0,
    }
}

/// [`ideal_rate`] evaluated at the bin centres and normalised to unit sum,
/// i.e. the screen distribution conditioned on the pair.
pub fn ideal_conditional(j: ArmOutcome, k: ArmOutcome, geometry: &SlitScreenGeometry) -> Vec<f64> {
    let raw: Vec<f64> = geometry.bin_centers().into_iter().map(|x| ideal_rate(j, k, x, geometry)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|r| r / total).collect()
}

/// Screen pattern coincident with Babu's D1 or D2 in single delayed-choice
/// mode. Both patterns share one normaliser, so their sum is the
/// fringe-free envelope with unit total.
pub fn single_choice_pattern(j: ArmOutcome, apparatus: &Apparatus) -> Result<Vec<f64>> {
    if apparatus.mode != Mode::SingleDelayedChoice {
        return Err(Error::WrongMode {
            expected: "single_delayed_choice",
        });
    }
    if j.is_which_path() {
        return Err(Error::WhichPathOutcome(j.label().into()));
    }
    let dist = joint_distribution(apparatus);
    let d1 = dist.slice(ArmOutcome::D1, None);
    let d2 = dist.slice(ArmOutcome::D2, None);
    let total: f64 = d1.iter().chain(d2.iter()).sum();
    let chosen = if j == ArmOutcome::D1 { d1 } else { d2 };
    Ok(chosen.into_iter().map(|p| p / total).collect())
}

/// Samples needed to resolve the fringes: `ceil(2 L / d)`.
pub fn nyquist_min_samples(geometry: &SlitScreenGeometry) -> usize {
    let ratio = 2.0 * geometry.screen_width() / geometry.slit_separation();
    // Guard against 2L/d landing a hair above an integer through rounding.
    let nearest = ratio.round();
    let n = if (ratio - nearest).abs() <= 1e-9 * nearest.max(1.0) {
        nearest
    } else {
        ratio.ceil()
    };
    (n as usize).max(1)
}
