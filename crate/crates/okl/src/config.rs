//! Flat key/value run configuration with per-module sections.
//!
//! The on-disk format is INI-like: `[section]` headers scope the keys
//! that follow, `key = value` lines assign, `#` starts a comment. Keys
//! are addressed as `section.key`. The canonical serialization (sorted
//! `section.key = value` lines) is what the manifest hashes, so two
//! configs with the same effective content hash identically.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use sha2::{Digest, Sha256};

/// A configuration problem, reported with the offending field path.
#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("config line {line}: expected `key = value` or `[section]`, got `{text}`")]
    Malformed { line: usize, text: String },
    #[error("config field `{field}`: cannot parse `{value}` as {wanted}")]
    BadValue {
        field: String,
        value: String,
        wanted: &'static str,
    },
    #[error("cannot read config: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Default)]
pub struct Config {
    map: BTreeMap<String, String>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut map = BTreeMap::new();
        let mut section = String::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                section = name.trim().to_string();
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(ConfigError::Malformed {
                    line: i + 1,
                    text: raw.trim().to_string(),
                });
            };
            let key = if section.is_empty() {
                k.trim().to_string()
            } else {
                format!("{section}.{}", k.trim())
            };
            map.insert(key, v.trim().to_string());
        }
        Ok(Self { map })
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn set(&mut self, key: &str, value: impl Display) {
        self.map.insert(key.to_string(), value.to_string());
    }

    /// Sorted `key = value` lines; the input to the config hash.
    pub fn canonical(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.map {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(v);
            out.push('\n');
        }
        out
    }

    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.canonical().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    fn get<T: FromStr>(&self, key: &str, wanted: &'static str) -> Result<Option<T>, ConfigError> {
        match self.map.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse().map(Some).map_err(|_| ConfigError::BadValue {
                field: key.to_string(),
                value: raw.clone(),
                wanted,
            }),
        }
    }

    pub fn f64(&self, key: &str, default: f64) -> Result<f64, ConfigError> {
        Ok(self.get(key, "a real number")?.unwrap_or(default))
    }

    pub fn u64(&self, key: &str, default: u64) -> Result<u64, ConfigError> {
        Ok(self.get(key, "a nonnegative integer")?.unwrap_or(default))
    }

    pub fn usize(&self, key: &str, default: usize) -> Result<usize, ConfigError> {
        Ok(self.get(key, "a nonnegative integer")?.unwrap_or(default))
    }

    pub fn bool(&self, key: &str, default: bool) -> Result<bool, ConfigError> {
        Ok(self.get(key, "true or false")?.unwrap_or(default))
    }

    pub fn str(&self, key: &str, default: &str) -> String {
        self.map
            .get(key)
            .cloned()
            .unwrap_or_else(|| default.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sections_prefix_keys_and_comments_are_stripped() {
        let cfg = Config::parse("top = 1\n[sim]\nn = 128 # lattice\ndt = 5e-4\n").unwrap();
        assert_eq!(cfg.u64("top", 0).unwrap(), 1);
        assert_eq!(cfg.usize("sim.n", 0).unwrap(), 128);
        assert_eq!(cfg.f64("sim.dt", 0.0).unwrap(), 5e-4);
        assert_eq!(cfg.f64("sim.missing", 2.5).unwrap(), 2.5);
    }

    #[test]
    fn malformed_lines_and_values_report_their_location() {
        let err = Config::parse("what is this").unwrap_err();
        assert!(matches!(err, ConfigError::Malformed { line: 1, .. }));
        let cfg = Config::parse("[sim]\ndt = soon\n").unwrap();
        let err = cfg.f64("sim.dt", 0.0).unwrap_err();
        assert!(err.to_string().contains("sim.dt"), "{err}");
    }

    #[test]
    fn hash_is_stable_under_reordering_and_formatting() {
        let a = Config::parse("[sim]\nn = 4\ndt = 1.0\n").unwrap();
        let b = Config::parse("[sim]\ndt=1.0\n\nn =   4 # same\n").unwrap();
        assert_eq!(a.hash(), b.hash());
        let mut c = a.clone();
        c.set("sim.n", 5);
        assert_ne!(a.hash(), c.hash());
    }
}
