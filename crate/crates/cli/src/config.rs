//! Flat key=value configuration files.
//!
//! A file supplies defaults for exactly the long flags of the suite
//! commands, one `key=value` pair per line; flags given on the command line
//! win. `q-value` is the only repeatable key, everything else may appear at
//! most once. Blank lines and `#` comments are skipped.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use lieform_core::suite::ConfigError;

/// Keys accepted in a configuration file. `q-value` is handled separately
/// because it accumulates.
const SCALAR_KEYS: [&str; 10] = [
    "p",
    "q",
    "sign",
    "window",
    "jet-order",
    "seed",
    "out",
    "max-terms",
    "convention",
    "cache-dir",
];

#[derive(Debug, Default)]
pub struct FileValues {
    scalars: BTreeMap<String, String>,
    q_values: Vec<String>,
}

impl FileValues {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.scalars.get(key).map(String::as_str)
    }

    pub fn q_values(&self) -> &[String] {
        &self.q_values
    }
}

pub fn load(path: &Path) -> Result<FileValues, ConfigError> {
    let text = fs::read_to_string(path).map_err(|e| ConfigError::File {
        path: path.display().to_string(),
        detail: e.to_string(),
    })?;
    parse(&text)
}

fn parse(text: &str) -> Result<FileValues, ConfigError> {
    let mut out = FileValues::default();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError::BadValue {
                key: "line".to_string(),
                value: line.to_string(),
            });
        };
        let key = key.trim();
        let value = value.trim().to_string();
        if key == "q-value" {
            out.q_values.push(value);
        } else if SCALAR_KEYS.contains(&key) {
            if out.scalars.insert(key.to_string(), value).is_some() {
                return Err(ConfigError::DuplicateKey(key.to_string()));
            }
        } else {
            return Err(ConfigError::UnknownKey(key.to_string()));
        }
    }
    Ok(out)
}
