//! Signal-photon screen: geometry, binning and the per-slit amplitude.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::optics::{ComplexAmplitude, Path};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
struct GeometryFields {
    d: f64,
    lambda: f64,
    f: f64,
    #[serde(rename = "L")]
    l: f64,
    n_bins: usize,
}

/// Double-slit and detection-screen geometry. Lengths are in metres.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GeometryFields", into = "GeometryFields")]
pub struct SlitScreenGeometry {
    slit_separation: f64,
    wavelength: f64,
    focal_length: f64,
    screen_width: f64,
    n_bins: usize,
}

impl TryFrom<GeometryFields> for SlitScreenGeometry {
    type Error = Error;

    fn try_from(g: GeometryFields) -> Result<Self> {
        SlitScreenGeometry::new(g.d, g.lambda, g.f, g.l, g.n_bins)
    }
}

impl From<SlitScreenGeometry> for GeometryFields {
    fn from(g: SlitScreenGeometry) -> Self {
        GeometryFields {
            d: g.slit_separation,
            lambda: g.wavelength,
            f: g.focal_length,
            l: g.screen_width,
            n_bins: g.n_bins,
        }
    }
}

impl SlitScreenGeometry {
    pub fn new(
        slit_separation: f64,
        wavelength: f64,
        focal_length: f64,
        screen_width: f64,
        n_bins: usize,
    ) -> Result<Self> {
        for (name, v) in [
            ("slit separation d", slit_separation),
            ("wavelength lambda", wavelength),
            ("focal length f", focal_length),
            ("screen width L", screen_width),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Geometry(format!("{name} must be strictly positive, got {v}")));
            }
        }
        if n_bins < 2 {
            return Err(Error::Geometry(format!("n_bins must be at least 2, got {n_bins}")));
        }
        Ok(Self {
            slit_separation,
            wavelength,
            focal_length,
            screen_width,
            n_bins,
        })
    }

    pub fn slit_separation(&self) -> f64 {
        self.slit_separation
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    pub fn focal_length(&self) -> f64 {
        self.focal_length
    }

    pub fn screen_width(&self) -> f64 {
        self.screen_width
    }

    pub fn n_bins(&self) -> usize {
        self.n_bins
    }

    pub fn bin_width(&self) -> f64 {
        self.screen_width / self.n_bins as f64
    }

    /// `x_i = -L/2 + (i + 0.5) L / n_bins`.
    pub fn bin_center(&self, index: usize) -> f64 {
        -0.5 * self.screen_width + (index as f64 + 0.5) * self.bin_width()
    }

    pub fn bin_centers(&self) -> Vec<f64> {
        (0..self.n_bins).map(|i| self.bin_center(i)).collect()
    }

    /// Per-slit phase `2 pi x d / (lambda f)`.
    pub fn slit_phase(&self, x: f64) -> f64 {
        2.0 * PI * x * self.slit_separation / (self.wavelength * self.focal_length)
    }

    /// Angular frequency of the conditional fringes in x, `4 pi d / (lambda f)`.
    pub fn fringe_wavenumber(&self) -> f64 {
        4.0 * PI * self.slit_separation / (self.wavelength * self.focal_length)
    }

    pub fn contains(&self, x: f64) -> bool {
        x.abs() <= 0.5 * self.screen_width
    }
}

/// Fringe-free intensity profile shared by both slits (the "clump").
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Envelope {
    #[default]
    Uniform,
    /// Centred Gaussian with standard deviation `sigma` metres.
    Gaussian { sigma: f64 },
}

impl Envelope {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Envelope::Uniform => Ok(()),
            Envelope::Gaussian { sigma } if sigma.is_finite() && sigma > 0.0 => Ok(()),
            Envelope::Gaussian { sigma } => Err(Error::Geometry(format!(
                "gaussian envelope sigma must be strictly positive, got {sigma}"
            ))),
        }
    }

    /// Unnormalised intensity at `x`.
    pub fn intensity(&self, x: f64) -> f64 {
        match *self {
            Envelope::Uniform => 1.0,
            Envelope::Gaussian { sigma } => (-0.5 * (x / sigma).powi(2)).exp(),
        }
    }
}

/// Bin-normalised signal amplitudes. `|psi(x_i)|^2` sums to one over the
/// bins for either slit.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalModel {
    geometry: SlitScreenGeometry,
    envelope: Envelope,
    normalizer: f64,
}

impl SignalModel {
    pub fn new(geometry: SlitScreenGeometry, envelope: Envelope) -> Result<Self> {
        envelope.validate()?;
        let normalizer: f64 = (0..geometry.n_bins())
            .map(|i| envelope.intensity(geometry.bin_center(i)))
            .sum();
        if !(normalizer.is_finite() && normalizer > 0.0) {
            return Err(Error::Geometry("envelope vanishes on every bin".into()));
        }
        Ok(Self {
            geometry,
            envelope,
            normalizer,
        })
    }

    pub fn geometry(&self) -> &SlitScreenGeometry {
        &self.geometry
    }

    pub fn envelope(&self) -> Envelope {
        self.envelope
    }

    /// Probability mass of the envelope at `x`, normalised over bins.
    pub fn envelope_weight(&self, x: f64) -> f64 {
        self.envelope.intensity(x) / self.normalizer
    }

    pub fn amplitude(&self, x: f64, path: Path) -> Result<ComplexAmplitude> {
        if !self.geometry.contains(x) {
            return Err(Error::OffScreen {
                x,
                half_width: 0.5 * self.geometry.screen_width(),
            });
        }
        Ok(self.amplitude_unchecked(x, path))
    }

    pub(crate) fn amplitude_unchecked(&self, x: f64, path: Path) -> ComplexAmplitude {
        let phase = match path {
            Path::A => self.geometry.slit_phase(x),
            Path::B => -self.geometry.slit_phase(x),
        };
        Complex64::from_polar(self.envelope_weight(x).sqrt(), phase)
    }

    pub fn bin_amplitude(&self, bin: usize, path: Path) -> Result<ComplexAmplitude> {
        if bin >= self.geometry.n_bins() {
            return Err(Error::BinIndex {
                index: bin,
                n_bins: self.geometry.n_bins(),
            });
        }
        Ok(self.amplitude_unchecked(self.geometry.bin_center(bin), path))
    }
}

/// `sqrt(E(x)/Z) e^{+-i 2 pi x d/(lambda f)}` for slit A (+) or B (-).
pub fn signal_amplitude(
    x: f64,
    path: Path,
    geometry: &SlitScreenGeometry,
    envelope: Envelope,
) -> Result<ComplexAmplitude> {
    SignalModel::new(*geometry, envelope)?.amplitude(x, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geom() -> SlitScreenGeometry {
        SlitScreenGeometry::new(1e-4, 7.02e-7, 1.0, 0.02, 64).unwrap()
    }

    #[test]
    fn rejects_bad_geometry() {
        assert!(SlitScreenGeometry::new(0.0, 1e-6, 1.0, 0.02, 64).is_err());
        assert!(SlitScreenGeometry::new(1e-4, -1e-6, 1.0, 0.02, 64).is_err());
        assert!(SlitScreenGeometry::new(1e-4, 1e-6, f64::INFINITY, 0.02, 64).is_err());
        assert!(SlitScreenGeometry::new(1e-4, 1e-6, 1.0, 0.02, 1).is_err());
    }

    #[test]
    fn bin_centers_are_symmetric() {
        let g = geom();
        assert!((g.bin_center(0) - (-0.01 + 0.5 * 0.02 / 64.0)).abs() < 1e-18);
        for i in 0..g.n_bins() {
            let mirrored = g.bin_center(g.n_bins() - 1 - i);
            assert!((g.bin_center(i) + mirrored).abs() < 1e-15);
        }
    }

    #[test]
    fn centre_amplitudes_are_real_and_equal() {
        let g = geom();
        let a = signal_amplitude(0.0, Path::A, &g, Envelope::Uniform).unwrap();
        let b = signal_amplitude(0.0, Path::B, &g, Envelope::Uniform).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.im, 0.0);
    }

    #[test]
    fn modulus_independent_of_path() {
        let g = geom();
        let model = SignalModel::new(g, Envelope::Gaussian { sigma: 0.004 }).unwrap();
        for x in g.bin_centers() {
            let a = model.amplitude(x, Path::A).unwrap();
            let b = model.amplitude(x, Path::B).unwrap();
            assert!((a.norm() - b.norm()).abs() < 1e-15);
            assert!((a - b.conj()).norm() < 1e-15);
        }
    }

    #[test]
    fn off_screen_is_an_error() {
        let g = geom();
        let err = signal_amplitude(0.011, Path::A, &g, Envelope::Uniform).unwrap_err();
        assert!(matches!(err, Error::OffScreen { .. }));
        assert!(signal_amplitude(0.01, Path::A, &g, Envelope::Uniform).is_ok());
    }

    #[test]
    fn bin_weights_are_normalised() {
        let g = geom();
        for env in [Envelope::Uniform, Envelope::Gaussian { sigma: 0.003 }] {
            let model = SignalModel::new(g, env).unwrap();
            let total: f64 = (0..g.n_bins())
                .map(|i| model.bin_amplitude(i, Path::A).unwrap().norm_sqr())
                .sum();
            assert!((total - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn invalid_sigma() {
        assert!(SignalModel::new(geom(), Envelope::Gaussian { sigma: 0.0 }).is_err());
    }
}
