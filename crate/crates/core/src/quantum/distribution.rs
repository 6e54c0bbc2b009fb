//! Joint detection amplitudes and the exact coincidence table.
//!
//! After both taps and splitters the three-photon state is
//!
//! ```text
//! (1/sqrt 2) sum_{path} psi_path(x) |a^path_babu> |a^path_alisha>
//! ```
//!
//! so the amplitude for signal bin `i`, Babu outcome `j` and Alisha outcome
//! `k` is one sum over the two paths. Single delayed-choice drops Alisha's
//! factor.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::optics::{arm_amplitudes, ArmAmplitudes, ArmOptics, ArmOutcome, BeamSplitterUnitary, ComplexAmplitude, Path};
use super::screen::{Envelope, SignalModel, SlitScreenGeometry};
use crate::error::{Error, Result};

/// Total-probability tolerance the table is required to meet.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    SingleDelayedChoice,
    DoubleDelayedChoice,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::SingleDelayedChoice => "single_delayed_choice",
            Mode::DoubleDelayedChoice => "double_delayed_choice",
        }
    }

    /// Alisha outcomes that index the table: her four detectors, or a single
    /// `None` slot when she is absent.
    pub fn alisha_slots(self) -> &'static [Option<ArmOutcome>] {
        const DOUBLE: [Option<ArmOutcome>; 4] = [
            Some(ArmOutcome::D1),
            Some(ArmOutcome::D2),
            Some(ArmOutcome::D3),
            Some(ArmOutcome::D4),
        ];
        match self {
            Mode::SingleDelayedChoice => &[None],
            Mode::DoubleDelayedChoice => &DOUBLE,
        }
    }
}

/// Everything the amplitude calculation needs: the screen model and both
/// arms. Alisha's arm is ignored in single mode.
#[derive(Debug, Clone, PartialEq)]
pub struct Apparatus {
    pub mode: Mode,
    pub signal: SignalModel,
    pub babu: ArmOptics,
    pub alisha: ArmOptics,
}

impl Apparatus {
    pub fn new(
        mode: Mode,
        geometry: SlitScreenGeometry,
        envelope: Envelope,
        babu: ArmOptics,
        alisha: ArmOptics,
    ) -> Result<Self> {
        Ok(Self {
            mode,
            signal: SignalModel::new(geometry, envelope)?,
            babu,
            alisha,
        })
    }

    pub fn geometry(&self) -> &SlitScreenGeometry {
        self.signal.geometry()
    }

    pub fn with_babu(&self, babu: ArmOptics) -> Self {
        Self { babu, ..self.clone() }
    }

    pub fn with_alisha(&self, alisha: ArmOptics) -> Self {
        Self { alisha, ..self.clone() }
    }

    pub fn with_mode(&self, mode: Mode) -> Self {
        Self { mode, ..self.clone() }
    }

    fn arm_tables(&self) -> ([ArmAmplitudes; 2], [ArmAmplitudes; 2]) {
        let babu = [arm_amplitudes(Path::A, &self.babu), arm_amplitudes(Path::B, &self.babu)];
        let alisha = [arm_amplitudes(Path::A, &self.alisha), arm_amplitudes(Path::B, &self.alisha)];
        (babu, alisha)
    }
}

fn check_slot(mode: Mode, k: Option<ArmOutcome>) -> Result<()> {
    match (mode, k) {
        (Mode::DoubleDelayedChoice, Some(_)) | (Mode::SingleDelayedChoice, None) => Ok(()),
        (Mode::DoubleDelayedChoice, None) => Err(Error::Outcome(
            "double delayed-choice amplitudes need an Alisha outcome".into(),
        )),
        (Mode::SingleDelayedChoice, Some(k)) => Err(Error::Outcome(format!(
            "single delayed-choice has no Alisha detector, got {}",
            k.primed_label()
        ))),
    }
}

fn path_coefficients(
    babu: &[ArmAmplitudes; 2],
    alisha: &[ArmAmplitudes; 2],
    j: ArmOutcome,
    k: Option<ArmOutcome>,
) -> [ComplexAmplitude; 2] {
    let mut out = [Complex64::new(0.0, 0.0); 2];
    for (slot, (b, a)) in out.iter_mut().zip(babu.iter().zip(alisha.iter())) {
        *slot = match k {
            Some(k) => b.get(j) * a.get(k),
            None => b.get(j),
        };
    }
    out
}

/// Amplitude for signal bin `bin`, Babu outcome `j` and (double mode)
/// Alisha outcome `k`.
pub fn joint_amplitude(
    bin: usize,
    j: ArmOutcome,
    k: Option<ArmOutcome>,
    apparatus: &Apparatus,
) -> Result<ComplexAmplitude> {
    check_slot(apparatus.mode, k)?;
    let psi_a = apparatus.signal.bin_amplitude(bin, Path::A)?;
    let psi_b = apparatus.signal.bin_amplitude(bin, Path::B)?;
    let (babu, alisha) = apparatus.arm_tables();
    let [c_a, c_b] = path_coefficients(&babu, &alisha, j, k);
    Ok((psi_a * c_a + psi_b * c_b) * std::f64::consts::FRAC_1_SQRT_2)
}

/// Exact joint probability table over (signal bin, Babu outcome, Alisha
/// outcome).
#[derive(Debug, Clone, PartialEq)]
pub struct CoincidenceDistribution {
    mode: Mode,
    geometry: SlitScreenGeometry,
    envelope: Envelope,
    babu: ArmOptics,
    alisha: ArmOptics,
    probs: Vec<f64>,
}

impl CoincidenceDistribution {
    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn geometry(&self) -> &SlitScreenGeometry {
        &self.geometry
    }

    pub fn envelope(&self) -> Envelope {
        self.envelope
    }

    pub fn babu(&self) -> &ArmOptics {
        &self.babu
    }

    pub fn alisha(&self) -> &ArmOptics {
        &self.alisha
    }

    pub fn n_bins(&self) -> usize {
        self.geometry.n_bins()
    }

    fn alisha_width(&self) -> usize {
        self.mode.alisha_slots().len()
    }

    fn slot_index(&self, k: Option<ArmOutcome>) -> usize {
        match (self.mode, k) {
            (Mode::DoubleDelayedChoice, Some(k)) => k.index(),
            (Mode::SingleDelayedChoice, None) => 0,
            _ => panic!("outcome {k:?} does not index a {} table", self.mode.name()),
        }
    }

    /// Flat index of a cell. Also the ordering used by [`Self::probabilities`].
    pub fn cell_index(&self, bin: usize, j: ArmOutcome, k: Option<ArmOutcome>) -> usize {
        (bin * 4 + j.index()) * self.alisha_width() + self.slot_index(k)
    }

    /// Inverse of [`Self::cell_index`].
    pub fn cell(&self, index: usize) -> (usize, ArmOutcome, Option<ArmOutcome>) {
        let width = self.alisha_width();
        let k = self.mode.alisha_slots()[index % width];
        let rest = index / width;
        (rest / 4, ArmOutcome::ALL[rest % 4], k)
    }

    pub fn prob(&self, bin: usize, j: ArmOutcome, k: Option<ArmOutcome>) -> f64 {
        self.probs[self.cell_index(bin, j, k)]
    }

    /// All cells, flattened with [`Self::cell_index`].
    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Joint probabilities across bins for a fixed `(j, k)`.
    pub fn slice(&self, j: ArmOutcome, k: Option<ArmOutcome>) -> Vec<f64> {
        (0..self.n_bins()).map(|i| self.prob(i, j, k)).collect()
    }

    /// Probability of the detector pair `(j, k)` summed over the screen.
    pub fn pair_probability(&self, j: ArmOutcome, k: Option<ArmOutcome>) -> f64 {
        self.slice(j, k).iter().sum()
    }

    /// Screen profile conditioned on `(j, k)`, normalised to unit sum. `None`
    /// when the pair never fires.
    pub fn conditional(&self, j: ArmOutcome, k: Option<ArmOutcome>) -> Option<Vec<f64>> {
        let slice = self.slice(j, k);
        let total: f64 = slice.iter().sum();
        (total > 0.0).then(|| slice.into_iter().map(|p| p / total).collect())
    }
}

/// `probs[i][j][k] = |joint_amplitude(i, j, k)|^2`. The screen amplitudes are
/// already bin-normalised, so the table sums to one.
pub fn joint_distribution(apparatus: &Apparatus) -> CoincidenceDistribution {
    let geometry = *apparatus.geometry();
    let (babu, alisha) = apparatus.arm_tables();
    let slots = apparatus.mode.alisha_slots();
    let mut probs = Vec::with_capacity(geometry.n_bins() * 4 * slots.len());
    for bin in 0..geometry.n_bins() {
        let x = geometry.bin_center(bin);
        let psi_a = apparatus.signal.amplitude_unchecked(x, Path::A);
        let psi_b = apparatus.signal.amplitude_unchecked(x, Path::B);
        for j in ArmOutcome::ALL {
            for &k in slots {
                let [c_a, c_b] = path_coefficients(&babu, &alisha, j, k);
                probs.push(0.5 * (psi_a * c_a + psi_b * c_b).norm_sqr());
            }
        }
    }
    CoincidenceDistribution {
        mode: apparatus.mode,
        geometry,
        envelope: apparatus.signal.envelope(),
        babu: apparatus.babu,
        alisha: apparatus.alisha,
        probs,
    }
}

fn erasure_only(outcome: ArmOutcome, primed: bool) -> Result<()> {
    if outcome.is_which_path() {
        let label = if primed { outcome.primed_label() } else { outcome.label() };
        return Err(Error::WhichPathOutcome(label.into()));
    }
    Ok(())
}

fn bare(unitary: BeamSplitterUnitary) -> ArmOptics {
    ArmOptics::new(0.0, true, unitary).expect("zero tap is valid")
}

/// Complex cross-term `c_A conj(c_B)` for an erasure pair. The fringe in the
/// `(j, k)` slice is `2 Re(c_A conj(c_B) e^{2 i phi(x)})`.
pub fn interference_phasor(
    j: ArmOutcome,
    k: ArmOutcome,
    babu: BeamSplitterUnitary,
    alisha: BeamSplitterUnitary,
) -> Result<ComplexAmplitude> {
    erasure_only(j, false)?;
    erasure_only(k, true)?;
    let babu_arm = bare(babu);
    let alisha_arm = bare(alisha);
    let c_a = arm_amplitudes(Path::A, &babu_arm).get(j) * arm_amplitudes(Path::A, &alisha_arm).get(k);
    let c_b = arm_amplitudes(Path::B, &babu_arm).get(j) * arm_amplitudes(Path::B, &alisha_arm).get(k);
    Ok(c_a * c_b.conj())
}

/// Real interference coefficient for the erasure pair `(j, k')`, i.e. the
/// term `(alpha alpha' beta beta' + c.c.)` with the sign of the pair.
pub fn interference_coefficient(
    j: ArmOutcome,
    k: ArmOutcome,
    babu: BeamSplitterUnitary,
    alisha: BeamSplitterUnitary,
) -> Result<f64> {
    Ok(2.0 * interference_phasor(j, k, babu, alisha)?.re)
}

/// Single delayed-choice counterpart: `-(alpha beta + c.c.)` for D1 and
/// `+(alpha beta + c.c.)` for D2.
pub fn single_interference_coefficient(j: ArmOutcome, unitary: BeamSplitterUnitary) -> Result<f64> {
    erasure_only(j, false)?;
    let arm = bare(unitary);
    let c_a = arm_amplitudes(Path::A, &arm).get(j);
    let c_b = arm_amplitudes(Path::B, &arm).get(j);
    Ok(2.0 * (c_a * c_b.conj()).re)
}

/// Alisha's table after summing over Babu's detectors: `[bin][k]`.
pub fn alisha_marginal(dist: &CoincidenceDistribution) -> Result<Vec<[f64; 4]>> {
    if dist.mode() != Mode::DoubleDelayedChoice {
        return Err(Error::WrongMode {
            expected: "double_delayed_choice",
        });
    }
    Ok((0..dist.n_bins())
        .map(|bin| {
            let mut row = [0.0; 4];
            for k in ArmOutcome::ALL {
                row[k.index()] = ArmOutcome::ALL.iter().map(|&j| dist.prob(bin, j, Some(k))).sum();
            }
            row
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::optics::unitary_from_angle;
    use ArmOutcome::*;

    fn geometry() -> SlitScreenGeometry {
        SlitScreenGeometry::new(1e-4, 7.02e-7, 1.0, 0.02, 64).unwrap()
    }

    fn balanced(mode: Mode, tap: f64) -> Apparatus {
        let arm = ArmOptics::balanced(tap).unwrap();
        Apparatus::new(mode, geometry(), Envelope::Uniform, arm, arm).unwrap()
    }

    #[test]
    fn path_inconsistent_pair_has_zero_amplitude() {
        let app = balanced(Mode::DoubleDelayedChoice, 0.5);
        for bin in [0, 17, 63] {
            assert_eq!(joint_amplitude(bin, D3, Some(D4), &app).unwrap().norm(), 0.0);
            assert_eq!(joint_amplitude(bin, D4, Some(D3), &app).unwrap().norm(), 0.0);
        }
    }

    #[test]
    fn slot_must_match_mode() {
        let double = balanced(Mode::DoubleDelayedChoice, 0.5);
        let single = balanced(Mode::SingleDelayedChoice, 0.5);
        assert!(joint_amplitude(0, D1, None, &double).is_err());
        assert!(joint_amplitude(0, D1, Some(D1), &single).is_err());
        assert!(joint_amplitude(64, D1, Some(D1), &double).is_err());
    }

    #[test]
    fn balanced_pairs_give_cos_and_sin_fringes() {
        let app = balanced(Mode::DoubleDelayedChoice, 0.0);
        let g = geometry();
        let n = g.n_bins() as f64;
        for bin in 0..g.n_bins() {
            let phi = g.slit_phase(g.bin_center(bin));
            let same = joint_amplitude(bin, D1, Some(D1), &app).unwrap();
            let mixed = joint_amplitude(bin, D1, Some(D2), &app).unwrap();
            // (1/sqrt2) * (1/2) * (e^{i phi} +- e^{-i phi}) / sqrt(n)
            let scale = std::f64::consts::FRAC_1_SQRT_2 / n.sqrt();
            assert!((same - Complex64::new(scale * phi.cos(), 0.0)).norm() < 1e-15);
            assert!((mixed - Complex64::new(0.0, scale * phi.sin())).norm() < 1e-15);
        }
    }

    #[test]
    fn full_tap_puts_all_mass_on_which_path() {
        let app = balanced(Mode::DoubleDelayedChoice, 1.0);
        let dist = joint_distribution(&app);
        let mut which_path = 0.0;
        for bin in 0..dist.n_bins() {
            for j in [D3, D4] {
                for k in [D3, D4] {
                    which_path += dist.prob(bin, j, Some(k));
                }
            }
        }
        assert!((which_path - 1.0).abs() < 1e-12);
        let aa = dist.conditional(D3, Some(D3)).unwrap();
        for p in aa {
            assert!((p - 1.0 / 64.0).abs() < 1e-15);
        }
    }

    #[test]
    fn cell_index_round_trips() {
        for mode in [Mode::SingleDelayedChoice, Mode::DoubleDelayedChoice] {
            let dist = joint_distribution(&balanced(mode, 0.5));
            for idx in 0..dist.probabilities().len() {
                let (bin, j, k) = dist.cell(idx);
                assert_eq!(dist.cell_index(bin, j, k), idx);
            }
        }
    }

    #[test]
    fn coefficients_reject_which_path() {
        let u = BeamSplitterUnitary::balanced();
        assert!(matches!(interference_coefficient(D3, D1, u, u), Err(Error::WhichPathOutcome(_))));
        assert!(matches!(interference_coefficient(D1, D4, u, u), Err(Error::WhichPathOutcome(l)) if l == "D4'"));
        assert!(single_interference_coefficient(D4, u).is_err());
    }

    #[test]
    fn balanced_coefficients() {
        let u = unitary_from_angle(std::f64::consts::FRAC_PI_4, 0.0);
        assert!((interference_coefficient(D1, D1, u, u).unwrap() - 0.5).abs() < 1e-15);
        assert!((interference_coefficient(D1, D2, u, u).unwrap() + 0.5).abs() < 1e-15);
        assert!((interference_coefficient(D2, D1, u, u).unwrap() + 0.5).abs() < 1e-15);
        assert!((interference_coefficient(D2, D2, u, u).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn marginal_needs_double_mode() {
        let dist = joint_distribution(&balanced(Mode::SingleDelayedChoice, 0.5));
        assert!(matches!(alisha_marginal(&dist), Err(Error::WrongMode { .. })));
    }
}
