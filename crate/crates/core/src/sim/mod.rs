//! Seeded Monte Carlo event generation, persistence and coincidence
//! matching.

pub mod background;
pub mod events;
pub mod io;
pub mod matching;
pub mod rng;
pub mod sample;

pub use background::inject_background;
pub use events::{emit_events, Detector, EventRecord, TimingLayout};
pub use io::{EventLog, SimStreamHeader, TriplesFile};
pub use matching::{match_coincidences, MatchOutcome};
pub use sample::{sample_triples, sample_triples_with, CoincidenceTriple, TripleSampler};

/// Default coincidence window in nanoseconds.
pub const DEFAULT_WINDOW_NS: u64 = 20;
