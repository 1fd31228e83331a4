use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use walkdir::WalkDir;

use crate::error::CliError;

pub const MANIFEST: &str = "manifest.json";

/// One pipeline stage as recorded in the manifest.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct StageRecord {
    pub config_hash: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub scenarios: Vec<String>,
    /// Wall-clock seconds; absent for pure aggregation stages.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub counts: BTreeMap<String, u64>,
}

/// Inventory of an output directory: every file except the manifest itself,
/// keyed by its '/'-separated relative path, with a sha256 checksum.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub version: String,
    pub stages: BTreeMap<String, StageRecord>,
    pub files: BTreeMap<String, String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunManifest {
    pub fn load(dir: &Path) -> Result<Option<Self>, CliError> {
        let path = dir.join(MANIFEST);
        if !path.is_file() {
            return Ok(None);
        }
        let text = fs::read_to_string(&path).map_err(CliError::io(&path))?;
        serde_json::from_str(&text)
            .map(Some)
            .map_err(|e| CliError::MissingInput(format!("{}: {e}", path.display())))
    }

    /// Record `stage`, rescan `dir` and write the manifest back.
    pub fn record(dir: &Path, stage: &str, rec: StageRecord) -> Result<Self, CliError> {
        let mut m = Self::load(dir)?.unwrap_or_default();
        m.version = env!("CARGO_PKG_VERSION").to_string();
        m.stages.insert(stage.to_string(), rec);
        m.files = scan(dir)?;
        let path = dir.join(MANIFEST);
        let text = serde_json::to_string_pretty(&m).expect("manifest serialises");
        fs::write(&path, text + "\n").map_err(CliError::io(&path))?;
        Ok(m)
    }
}

fn scan(dir: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let mut files = BTreeMap::new();
    for entry in WalkDir::new(dir).sort_by_file_name() {
        let entry = entry.map_err(|e| CliError::Io {
            path: dir.to_path_buf(),
            source: e.into(),
        })?;
        if !entry.file_type().is_file() {
            continue;
        }
        let rel = entry.path().strip_prefix(dir).expect("walk stays under root");
        if rel == Path::new(MANIFEST) {
            continue;
        }
        let bytes = fs::read(entry.path()).map_err(CliError::io(entry.path()))?;
        let key = rel
            .components()
            .map(|c| c.as_os_str().to_string_lossy())
            .collect::<Vec<_>>()
            .join("/");
        files.insert(key, sha256_hex(&bytes));
    }
    Ok(files)
}
