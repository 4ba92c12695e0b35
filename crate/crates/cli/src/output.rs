//! Deterministic report writing.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::config::CliError;

/// Pretty JSON plus a trailing newline; byte-stable for a fixed value.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut body = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Config(format!("serialization failed: {e}")))?;
    body.push('\n');
    write_bytes(path, body.as_bytes())
}

pub fn write_bytes(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let mut file = std::fs::File::create(path)
        .map_err(|e| CliError::Config(format!("cannot create {}: {e}", path.display())))?;
    file.write_all(bytes)
        .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))?;
    Ok(())
}

/// 17 significant digits, '.' decimal, round-trip safe.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}
