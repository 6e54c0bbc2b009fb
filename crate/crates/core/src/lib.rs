//! Simulation and statistics for delayed-choice and double-delayed-choice
//! quantum eraser experiments.
//!
//! The crate is organised bottom-up:
//!
//! - [`quantum`]: exact amplitudes, the joint coincidence table, interference
//!   coefficients and Alisha's marginal.
//! - [`experiment`]: configuration files, the GHZ path state, closed-form
//!   reference rates, Babu's switch schedule and the sampling bound.
//! - [`sim`]: seeded Monte Carlo triples, timestamped detector events,
//!   background counts and coincidence matching.
//! - [`analysis`]: histograms, fringe fits, bit decoding and mutual
//!   information.
//! - [`cli`]: the reproducible runs behind the `qeraser` binary.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod experiment;
pub mod quantum;
pub mod sim;

pub use error::{Error, Result};
