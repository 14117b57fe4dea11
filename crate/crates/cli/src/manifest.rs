use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::json;

/// Provenance record written next to a command's outputs.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    /// SHA-256 of the canonical (key-sorted, compact) JSON of the config.
    pub config_hash: String,
    pub artifact_version: String,
    pub seeds: Vec<u64>,
    pub outputs: Vec<PathBuf>,
    pub wall_clock_seconds: f64,
}

pub fn config_hash(config: &Value) -> String {
    // serde_json's default map is ordered, so this is canonical.
    let text = serde_json::to_string(config).unwrap_or_default();
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// Collects outputs over a run, then writes `manifest.json`.
pub struct ManifestBuilder {
    started: Instant,
    config: Value,
    seeds: Vec<u64>,
    outputs: Vec<PathBuf>,
}

impl ManifestBuilder {
    pub fn new(config: Value, seeds: Vec<u64>) -> Self {
        Self { started: Instant::now(), config, seeds, outputs: Vec::new() }
    }

    pub fn record(&mut self, path: impl Into<PathBuf>) {
        self.outputs.push(path.into());
    }

    pub fn has_outputs(&self) -> bool {
        !self.outputs.is_empty()
    }

    pub fn write(mut self, dir: &Path) -> anyhow::Result<PathBuf> {
        let path = dir.join("manifest.json");
        self.outputs.sort();
        let manifest = RunManifest {
            command_line: std::env::args().collect(),
            config_hash: config_hash(&self.config),
            artifact_version: env!("CARGO_PKG_VERSION").to_string(),
            seeds: self.seeds,
            outputs: self.outputs,
            wall_clock_seconds: self.started.elapsed().as_secs_f64(),
        };
        std::fs::write(&path, json::to_pretty(&manifest)?)?;
        Ok(path)
    }
}
