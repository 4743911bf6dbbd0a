//! Atomic CSV/JSON emission and the run manifest.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use revlab::GridProfile;
use serde::Serialize;
use tempfile::NamedTempFile;

use crate::error::CliError;
use crate::params::ResolvedParameters;

/// Metadata written next to every profile: what was run, with which fully
/// resolved parameters, and how it checked out.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub version: &'static str,
    pub parameters: ResolvedParameters,
    pub outputs: Vec<String>,
    pub norms: BTreeMap<String, f64>,
    pub residuals: BTreeMap<String, f64>,
    pub duration_seconds: f64,
}

/// Writes `bytes` to a temporary file in the target directory, then renames
/// it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = NamedTempFile::new_in(&dir).map_err(|e| CliError::io(&dir, e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(path, e))?;
    tmp.flush().map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

/// `x,re,im` rows, 17 significant digits, LF line endings.
pub fn profile_csv(profile: &GridProfile) -> String {
    let mut out = String::with_capacity(64 * (profile.len() + 1));
    out.push_str("x,re,im\n");
    for (k, s) in profile.samples.iter().enumerate() {
        out.push_str(&format!(
            "{:.16e},{:.16e},{:.16e}\n",
            profile.x(k),
            s.re,
            s.im
        ));
    }
    out
}

pub fn write_profile(path: &Path, profile: &GridProfile) -> Result<(), CliError> {
    write_atomic(path, profile_csv(profile).as_bytes())
}

pub fn json_string<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    write_atomic(path, json_string(value)?.as_bytes())
}

/// `PREFIX.ext`, keeping any dots already present in the prefix.
pub fn with_extension(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}
