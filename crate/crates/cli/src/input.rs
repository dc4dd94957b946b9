use std::io::Read;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::de::DeserializeOwned;
use serde_json::Value;

/// Reads JSON from a file, or from stdin when the path is absent or `-`.
pub fn read_value(path: Option<&Path>) -> Result<Value> {
    let text = match path {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?
        }
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .context("reading stdin")?;
            s
        }
    };
    let label = path.map_or_else(|| "stdin".to_string(), |p| p.display().to_string());
    serde_json::from_str(&text).with_context(|| format!("malformed JSON in {label}"))
}

/// Reads and decodes; returns the raw value too, for echoing as inputs.
pub fn read<T: DeserializeOwned>(path: Option<&PathBuf>) -> Result<(T, Value)> {
    let v = read_value(path.map(PathBuf::as_path))?;
    let label = path.map_or_else(|| "stdin".to_string(), |p| p.display().to_string());
    let t = serde_json::from_value(v.clone())
        .with_context(|| format!("unexpected shape in {label}"))?;
    Ok((t, v))
}
