use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("beam splitter is not unitary: |alpha|^2 + |beta|^2 = {norm}")]
    NotUnitary { norm: f64 },

    #[error("tap probability {0} outside [0, 1]")]
    TapProbability(f64),

    #[error("invalid geometry: {0}")]
    Geometry(String),

    #[error("position x = {x} m lies outside the screen (half width {half_width} m)")]
    OffScreen { x: f64, half_width: f64 },

    #[error("bin index {index} out of range for {n_bins} bins")]
    BinIndex { index: usize, n_bins: usize },

    #[error("{0} is a which-path outcome; only D1/D2 erasure outcomes carry interference")]
    WhichPathOutcome(String),

    #[error("operation requires {expected} mode")]
    WrongMode { expected: &'static str },

    #[error("invalid outcome combination: {0}")]
    Outcome(String),

    #[error("switch schedule has no bits")]
    EmptySchedule,

    #[error("invalid switch schedule: {0}")]
    Schedule(String),

    #[error("event stream is not time-sorted at record {index}")]
    UnsortedStream { index: usize },

    #[error("histogram is empty")]
    EmptyHistogram,

    #[error("fringe fit is singular")]
    SingularFit,

    #[error("mutual information requires at least two distinct labels, found {0}")]
    SingleLabel(usize),

    #[error("labels and observables differ in length ({labels} vs {observables})")]
    LengthMismatch { labels: usize, observables: usize },

    #[error("sweep grid is empty")]
    EmptyGrid,

    #[error("config error in {path}: {message}")]
    Config { path: PathBuf, message: String },

    #[error("parse error in {path} line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("config digest mismatch: file has {found}, config gives {expected}")]
    DigestMismatch { expected: String, found: String },

    #[error("{path}: expected {expected} records, found {found}")]
    Truncated {
        path: PathBuf,
        expected: usize,
        found: usize,
    },

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            context: context.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
