//! Beam splitters and the per-arm idler optics.
//!
//! Each idler arm first meets a tap that diverts the photon to a which-path
//! detector (D3 for path A, D4 for path B) with probability `p`. The
//! surviving amplitude then passes the erasing beam splitter
//!
//! ```text
//! |I_A> -> alpha |D1> + beta |D2>
//! |I_B> -> -beta* |D1> + alpha* |D2>
//! ```
//!
//! which is the unitary `[[alpha, beta], [-beta*, alpha*]]` with unit
//! determinant. Removing the splitter replaces it with the identity.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Complex probability amplitude.
pub type ComplexAmplitude = Complex64;

/// Tolerance used when checking that a splitter is unitary.
pub const UNITARITY_TOLERANCE: f64 = 1e-12;

/// Slit (path) label shared by the signal photon and both idlers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Path {
    A,
    B,
}

impl Path {
    pub const ALL: [Path; 2] = [Path::A, Path::B];

    pub fn flipped(self) -> Path {
        match self {
            Path::A => Path::B,
            Path::B => Path::A,
        }
    }
}

/// Detector reached by one idler. The arm (Babu's or Alisha's) is implied by
/// where the outcome is used; Alisha's detectors print with a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ArmOutcome {
    D1,
    D2,
    D3,
    D4,
}

impl ArmOutcome {
    pub const ALL: [ArmOutcome; 4] = [ArmOutcome::D1, ArmOutcome::D2, ArmOutcome::D3, ArmOutcome::D4];
    pub const ERASURE: [ArmOutcome; 2] = [ArmOutcome::D1, ArmOutcome::D2];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<ArmOutcome> {
        Self::ALL.get(index).copied()
    }

    /// True for D3/D4, whose firing reveals the path.
    pub fn is_which_path(self) -> bool {
        matches!(self, ArmOutcome::D3 | ArmOutcome::D4)
    }

    pub fn label(self) -> &'static str {
        match self {
            ArmOutcome::D1 => "D1",
            ArmOutcome::D2 => "D2",
            ArmOutcome::D3 => "D3",
            ArmOutcome::D4 => "D4",
        }
    }

    pub fn primed_label(self) -> &'static str {
        match self {
            ArmOutcome::D1 => "D1'",
            ArmOutcome::D2 => "D2'",
            ArmOutcome::D3 => "D3'",
            ArmOutcome::D4 => "D4'",
        }
    }

    pub fn parse(label: &str) -> Option<ArmOutcome> {
        let bare = label.strip_suffix('\'').unwrap_or(label);
        match bare {
            "D1" => Some(ArmOutcome::D1),
            "D2" => Some(ArmOutcome::D2),
            "D3" => Some(ArmOutcome::D3),
            "D4" => Some(ArmOutcome::D4),
            _ => None,
        }
    }
}

impl fmt::Display for ArmOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The 2x2 splitter `[[alpha, beta], [-beta*, alpha*]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSplitterUnitary {
    alpha: ComplexAmplitude,
    beta: ComplexAmplitude,
}

impl BeamSplitterUnitary {
    pub const IDENTITY: BeamSplitterUnitary = BeamSplitterUnitary {
        alpha: Complex64::new(1.0, 0.0),
        beta: Complex64::new(0.0, 0.0),
    };

    pub fn new(alpha: ComplexAmplitude, beta: ComplexAmplitude) -> Result<Self> {
        let norm = alpha.norm_sqr() + beta.norm_sqr();
        if !norm.is_finite() || (norm - 1.0).abs() > UNITARITY_TOLERANCE {
            return Err(Error::NotUnitary { norm });
        }
        Ok(Self { alpha, beta })
    }

    /// Builds a splitter without the unitarity check. Used by the
    /// verification suite to inject negative controls.
    pub fn new_unchecked(alpha: ComplexAmplitude, beta: ComplexAmplitude) -> Self {
        Self { alpha, beta }
    }

    /// `alpha = cos(theta)`, `beta = sin(theta) e^{i chi}`.
    pub fn from_angle(theta: f64, chi: f64) -> Self {
        Self {
            alpha: Complex64::new(theta.cos(), 0.0),
            beta: Complex64::from_polar(theta.sin(), chi),
        }
    }

    /// The symmetric 50% splitter.
    pub fn balanced() -> Self {
        Self::from_angle(std::f64::consts::FRAC_PI_4, 0.0)
    }

    pub fn alpha(&self) -> ComplexAmplitude {
        self.alpha
    }

    pub fn beta(&self) -> ComplexAmplitude {
        self.beta
    }

    /// `|alpha|^2 + |beta|^2`.
    pub fn norm_sqr(&self) -> f64 {
        self.alpha.norm_sqr() + self.beta.norm_sqr()
    }

    pub fn unitarity_error(&self) -> f64 {
        (self.norm_sqr() - 1.0).abs()
    }

    pub fn determinant(&self) -> ComplexAmplitude {
        self.alpha * self.alpha.conj() + self.beta * self.beta.conj()
    }

    /// Outgoing `(D1, D2)` amplitudes for an idler entering on `path`.
    pub fn outputs(&self, path: Path) -> [ComplexAmplitude; 2] {
        match path {
            Path::A => [self.alpha, self.beta],
            Path::B => [-self.beta.conj(), self.alpha.conj()],
        }
    }
}

/// Free-function form of [`BeamSplitterUnitary::from_angle`].
pub fn unitary_from_angle(theta: f64, chi: f64) -> BeamSplitterUnitary {
    BeamSplitterUnitary::from_angle(theta, chi)
}

/// One idler arm: tap, insert-or-remove choice, and the erasing splitter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArmOptics {
    tap_probability: f64,
    splitter_present: bool,
    unitary: BeamSplitterUnitary,
}

impl ArmOptics {
    pub fn new(tap_probability: f64, splitter_present: bool, unitary: BeamSplitterUnitary) -> Result<Self> {
        if !(0.0..=1.0).contains(&tap_probability) {
            return Err(Error::TapProbability(tap_probability));
        }
        Ok(Self {
            tap_probability,
            splitter_present,
            unitary,
        })
    }

    /// Balanced splitter, inserted, with the given tap.
    pub fn balanced(tap_probability: f64) -> Result<Self> {
        Self::new(tap_probability, true, BeamSplitterUnitary::balanced())
    }

    pub fn tap_probability(&self) -> f64 {
        self.tap_probability
    }

    pub fn splitter_present(&self) -> bool {
        self.splitter_present
    }

    /// The configured splitter, whether or not it is currently inserted.
    pub fn unitary(&self) -> BeamSplitterUnitary {
        self.unitary
    }

    /// The splitter actually acting on the idler.
    pub fn effective_unitary(&self) -> BeamSplitterUnitary {
        if self.splitter_present {
            self.unitary
        } else {
            BeamSplitterUnitary::IDENTITY
        }
    }

    pub fn with_splitter(mut self, present: bool) -> Self {
        self.splitter_present = present;
        self
    }

    pub fn with_unitary(mut self, unitary: BeamSplitterUnitary) -> Self {
        self.unitary = unitary;
        self
    }

    pub fn with_tap(self, tap_probability: f64) -> Result<Self> {
        Self::new(tap_probability, self.splitter_present, self.unitary)
    }
}

/// Outcome amplitudes of one arm for a given input path, indexed by
/// [`ArmOutcome::index`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArmAmplitudes(pub [ComplexAmplitude; 4]);

impl ArmAmplitudes {
    pub fn get(&self, outcome: ArmOutcome) -> ComplexAmplitude {
        self.0[outcome.index()]
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &ArmAmplitudes) -> ComplexAmplitude {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (ArmOutcome, ComplexAmplitude)> + '_ {
        ArmOutcome::ALL.iter().map(move |&o| (o, self.0[o.index()]))
    }
}

/// Amplitudes for an idler on `path` to reach each of D1..D4.
///
/// Path A: `(sqrt(1-p) alpha, sqrt(1-p) beta, sqrt(p), 0)`;
/// path B: `(-sqrt(1-p) beta*, sqrt(1-p) alpha*, 0, sqrt(p))`.
pub fn arm_amplitudes(path: Path, optics: &ArmOptics) -> ArmAmplitudes {
    let tap = optics.tap_probability.sqrt();
    let pass = (1.0 - optics.tap_probability).sqrt();
    let [d1, d2] = optics.effective_unitary().outputs(path);
    let zero = Complex64::new(0.0, 0.0);
    let tapped = Complex64::new(tap, 0.0);
    match path {
        Path::A => ArmAmplitudes([d1 * pass, d2 * pass, tapped, zero]),
        Path::B => ArmAmplitudes([d1 * pass, d2 * pass, zero, tapped]),
    }
}
