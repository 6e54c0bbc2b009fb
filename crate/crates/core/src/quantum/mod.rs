//! Exact amplitudes for the two- and three-photon path-entangled systems.

pub mod distribution;
pub mod optics;
pub mod screen;

pub use distribution::{
    alisha_marginal, interference_coefficient, interference_phasor, joint_amplitude, joint_distribution,
    single_interference_coefficient, Apparatus, CoincidenceDistribution, Mode, NORMALIZATION_TOLERANCE,
};
pub use optics::{
    arm_amplitudes, unitary_from_angle, ArmAmplitudes, ArmOptics, ArmOutcome, BeamSplitterUnitary,
    ComplexAmplitude, Path, UNITARITY_TOLERANCE,
};
pub use screen::{signal_amplitude, Envelope, SignalModel, SlitScreenGeometry};
