//! Histograms, fringe fits, Babu-bit decoding and mutual information.

pub mod decode;
pub mod fit;
pub mod histogram;
pub mod mi;
pub mod tables;

pub use decode::{decode_alisha_only, decode_omniscient, DecodeReport};
pub use fit::{classify_pattern, fit_fringe, fit_profile, FringeFit, PatternClass, DEFAULT_THRESHOLD};
pub use histogram::{build_histogram, Histogram, Selector};
pub use mi::{alisha_observables, bit_labels, mutual_information, omniscient_observables, MIEstimate};
