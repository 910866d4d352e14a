//! Run manifests: what ran, on which inputs, producing which bytes.

use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
    pub bytes: usize,
}

impl FileDigest {
    pub fn of_bytes(path: &str, data: &[u8]) -> Self {
        FileDigest {
            path: path.to_string(),
            sha256: hex::encode(Sha256::digest(data)),
            bytes: data.len(),
        }
    }
}

pub fn digest(path: &Path) -> std::io::Result<FileDigest> {
    Ok(FileDigest::of_bytes(&path.display().to_string(), &std::fs::read(path)?))
}

/// `out.csv` gets `out.csv.manifest.json`.
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: Vec<String>,
    pub version: String,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    pub exit_code: u8,
    pub wall_time_ms: u128,
}

impl RunManifest {
    pub fn new(args: &[String], inputs: Vec<FileDigest>, outputs: Vec<FileDigest>, exit_code: u8, wall: Duration) -> Self {
        let command = args
            .iter()
            .take_while(|a| !a.starts_with('-'))
            .cloned()
            .collect::<Vec<_>>()
            .join(" ");
        RunManifest {
            command,
            parameters: args.to_vec(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            inputs,
            outputs,
            exit_code,
            wall_time_ms: wall.as_millis(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}
