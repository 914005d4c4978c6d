use std::path::{Path, PathBuf};

use potato::peeler::PeelConfig;
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Record written next to a command's outputs.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    /// Parsed arguments, after environment variables were applied.
    pub args: serde_json::Value,
    pub config: Option<PeelConfig>,
    /// First 8 bytes of the SHA-256 of the input file, as hex.
    pub input_hash: Option<String>,
    pub outputs: Vec<PathBuf>,
}

pub fn content_hash(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut first = [0u8; 8];
    first.copy_from_slice(&digest[..8]);
    format!("{:016x}", u64::from_be_bytes(first))
}

impl RunManifest {
    /// `explicit`, or `<first output>.manifest.json`, or nothing when the
    /// command wrote only to stdout.
    pub fn location(&self, explicit: Option<&Path>) -> Option<PathBuf> {
        if let Some(p) = explicit {
            return Some(p.to_path_buf());
        }
        let first = self.outputs.first()?;
        let mut name = first.as_os_str().to_owned();
        name.push(".manifest.json");
        Some(PathBuf::from(name))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}
