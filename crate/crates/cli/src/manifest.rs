//! Reproducibility record written alongside pipeline outputs.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::Write;
use std::path::Path;

use anyhow::Result;
use serde::Serialize;
use sha2::{Digest, Sha256};

/// One manifest per output directory: the command, its configuration
/// snapshot, content digests of every input, the tool version, and a
/// timestamp (the timestamp is excluded from the determinism contract).
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub inputs: BTreeMap<String, String>,
    pub tool_version: String,
    pub generated_at: String,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        RunManifest {
            command: command.to_string(),
            config: BTreeMap::new(),
            inputs: BTreeMap::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            generated_at: chrono::Utc::now().to_rfc3339(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.config.insert(key.to_string(), value.to_string());
    }

    pub fn digest_input(&mut self, path: &Path) -> Result<()> {
        let bytes = std::fs::read(path)?;
        let digest = Sha256::digest(&bytes);
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        self.inputs.insert(path.display().to_string(), format!("sha256:{hex}"));
        Ok(())
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut f = File::create(path)?;
        serde_json::to_writer_pretty(&mut f, self)?;
        writeln!(f)?;
        Ok(())
    }
}
