//! Reproducible runs: each command reads one config, draws all randomness
//! from one seed, writes plain tables and a run manifest.

pub mod decode;
pub mod patterns;
pub mod simulate;
pub mod sweep;
pub mod verify;

use std::path::{Path as FsPath, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use decode::{cmd_decode, DecodeMode, DecodeOutcome};
pub use patterns::{cmd_patterns, PatternTables};
pub use simulate::{cmd_simulate, SimulateOptions, SimulateSummary};
pub use sweep::{cmd_sweep, SweepGrid, SweepRow};
pub use verify::{cmd_verify, CheckResult, VerifyOptions, VerifyReport};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// What a run consumed and produced. Contains nothing time- or
/// host-dependent, so identical runs write identical manifests.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub config_path: String,
    pub config_digest: String,
    pub seed: Option<u64>,
    pub outputs: Vec<String>,
    pub tool_version: String,
}

impl RunManifest {
    pub fn new(command: &str, config_path: &str, config_digest: &str, seed: Option<u64>) -> Self {
        Self {
            command: command.to_string(),
            config_path: config_path.to_string(),
            config_digest: config_digest.to_string(),
            seed,
            outputs: Vec::new(),
            tool_version: TOOL_VERSION.to_string(),
        }
    }

    pub fn write_to(&self, dir: &FsPath) -> Result<PathBuf> {
        let path = dir.join(format!("manifest_{}.toml", self.command));
        write_file(&path, &toml::to_string(self).expect("manifest serialises"))?;
        Ok(path)
    }
}

pub(crate) fn ensure_dir(dir: &FsPath) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(format!("creating {}", dir.display()), e))
}

pub(crate) fn write_file(path: &FsPath, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::io(format!("writing {}", path.display()), e))
}

/// Writes `text` to `dir/name` and records it in the manifest.
pub(crate) fn emit(dir: &FsPath, name: &str, text: &str, manifest: &mut RunManifest) -> Result<PathBuf> {
    let path = dir.join(name);
    write_file(&path, text)?;
    manifest.outputs.push(name.to_string());
    Ok(path)
}
