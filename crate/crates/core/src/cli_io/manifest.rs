use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

use super::CliError;

/// Caps worker threads. The computations are single-threaded, so any
/// positive value is honoured; it is validated and recorded.
pub const THREADS_ENV: &str = "MODELSPACE_THREADS";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub args: Vec<String>,
    pub tool_version: String,
    pub seed: u64,
    pub threads: Option<usize>,
    pub inputs: Vec<FileDigest>,
    pub config: serde_json::Value,
    pub wall_clock_seconds: f64,
    pub outputs: Vec<FileDigest>,
}

pub fn digest_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn thread_cap() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::BadEnv { var: THREADS_ENV.into(), value: v }),
        },
    }
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> CliError {
    let path = path.display().to_string();
    move |source| CliError::Io { path, source }
}

/// Writes each output file into `dir`, then the manifest listing their
/// digests. Returns the manifest path.
pub fn write_outputs(dir: &Path, files: &[(String, Vec<u8>)], manifest: &mut RunManifest) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(dir).map_err(io(dir))?;
    manifest.outputs.clear();
    for (name, bytes) in files {
        let path = dir.join(name);
        std::fs::write(&path, bytes).map_err(io(&path))?;
        manifest.outputs.push(FileDigest { path: path.display().to_string(), sha256: digest_hex(bytes) });
    }
    let path = dir.join("manifest.json");
    let text = serde_json::to_vec_pretty(manifest)?;
    std::fs::write(&path, text).map_err(io(&path))?;
    Ok(path)
}
