use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generate::{generate_batch, GenerationStats, GeneratorConfig, Method, SeriesBatch};
use crate::io::Format;
use crate::rng::MasterSeed;

/// Everything needed to regenerate a dataset file bit for bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub artifact_version: String,
    pub method: Method,
    pub config: GeneratorConfig,
    pub seed: MasterSeed,
    pub n: usize,
    pub length: usize,
    /// Seconds since the Unix epoch.
    pub created_unix: u64,
    pub stats: GenerationStats,
    pub format: Format,
}

impl Manifest {
    pub fn new(
        config: &GeneratorConfig,
        seed: MasterSeed,
        n: usize,
        stats: GenerationStats,
        format: Format,
    ) -> Self {
        let created_unix = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        Manifest {
            artifact_version: crate::VERSION.to_string(),
            method: config.method,
            config: config.clone(),
            seed,
            n,
            length: config.target_length,
            created_unix,
            stats,
            format,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: Manifest =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("manifest: {e}")))?;
        if m.method != m.config.method || m.length != m.config.target_length {
            return Err(Error::Config(
                "manifest fields disagree with its config".into(),
            ));
        }
        Ok(m)
    }

    /// Rebuilds the batch the manifest describes.
    pub fn regenerate(&self, workers: usize) -> Result<SeriesBatch> {
        generate_batch(self.seed, self.n, &self.config, workers).map(|(b, _)| b)
    }
}

/// `data.npy` → `data.npy.manifest.json`.
pub fn manifest_path(data: impl AsRef<Path>) -> PathBuf {
    let mut s = data.as_ref().as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

pub fn write_manifest(m: &Manifest, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, m.to_json() + "\n")?;
    Ok(())
}

pub fn read_manifest(path: impl AsRef<Path>) -> Result<Manifest> {
    Manifest::from_json(&std::fs::read_to_string(path)?)
}
