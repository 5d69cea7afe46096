use std::fs::{self, OpenOptions};
use std::io::ErrorKind;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{t_exponent, CorrelatorKey, Correlators};
use crate::error::{Error, Result};
use crate::exactalg::parse_rat;
use crate::TPoly;

pub const CACHE_VERSION: u64 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub g: i64,
    pub mu: Vec<usize>,
    pub t_power: u32,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub version: u64,
    pub entries: Vec<CacheEntry>,
}

/// Exclusive hold on a cache file, released on drop.
#[derive(Debug)]
pub struct CacheLock {
    path: PathBuf,
}

impl CacheLock {
    pub fn acquire(cache: &Path) -> Result<Self> {
        let mut name = cache.as_os_str().to_owned();
        name.push(".lock");
        let path = PathBuf::from(name);
        match OpenOptions::new().write(true).create_new(true).open(&path) {
            Ok(_) => Ok(Self { path }),
            Err(e) if e.kind() == ErrorKind::AlreadyExists => {
                Err(Error::CacheLocked(cache.to_path_buf()))
            }
            Err(source) => Err(Error::CacheIo { path, source }),
        }
    }
}

impl Drop for CacheLock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.path);
    }
}

impl CacheFile {
    pub fn from_table(table: &Correlators) -> Self {
        let entries = table
            .entries()
            .into_iter()
            .map(|(key, value)| {
                let (coeff, t_power) = value
                    .as_monomial()
                    .map(|(c, e)| (c.to_string(), e))
                    .unwrap_or_else(|| ("0".to_string(), 0));
                CacheEntry {
                    g: key.g,
                    mu: key.mu,
                    t_power,
                    coeff,
                }
            })
            .collect();
        Self {
            version: CACHE_VERSION,
            entries,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("cache entries serialize")
    }

    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let corrupt = |reason: String| Error::CacheCorrupt {
            path: path.to_path_buf(),
            reason,
        };
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| corrupt(e.to_string()))?;
        let found = value
            .get("version")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| corrupt("missing version".into()))?;
        if found != CACHE_VERSION {
            return Err(Error::CacheVersion {
                path: path.to_path_buf(),
                found,
                expected: CACHE_VERSION,
            });
        }
        let file: CacheFile = serde_json::from_value(value).map_err(|e| corrupt(e.to_string()))?;
        for e in &file.entries {
            if e.mu.is_empty() || e.mu.windows(2).any(|w| w[0] < w[1]) {
                return Err(corrupt(format!("entry mu {:?} is not sorted", e.mu)));
            }
            parse_rat(&e.coeff).map_err(|err| corrupt(err.to_string()))?;
        }
        Ok(file)
    }

    /// Loads entries into the table.
    pub fn fill(&self, table: &Correlators) -> Result<()> {
        for e in &self.entries {
            let c = parse_rat(&e.coeff)?;
            table.insert(
                CorrelatorKey::new(e.g, &e.mu),
                TPoly::monomial(c, e.t_power),
            );
        }
        Ok(())
    }
}

impl Correlators {
    /// Reads a cache file; a missing file gives an empty table.
    pub fn load(path: &Path) -> Result<Self> {
        let table = Self::new();
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == ErrorKind::NotFound => return Ok(table),
            Err(source) => {
                return Err(Error::CacheIo {
                    path: path.to_path_buf(),
                    source,
                })
            }
        };
        CacheFile::parse(&text, path)?.fill(&table)?;
        Ok(table)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut text = CacheFile::from_table(self).to_json();
        text.push('\n');
        fs::write(path, text).map_err(|source| Error::CacheIo {
            path: path.to_path_buf(),
            source,
        })
    }

    /// Recomputes every stored value from scratch and lists disagreements.
    pub fn audit(&self) -> Result<Vec<String>> {
        let fresh = Correlators::new();
        let mut bad = Vec::new();
        for (key, value) in self.entries() {
            let expect = if t_exponent(key.g, &key.mu).is_some() {
                fresh.get(key.g, &key.mu)?
            } else {
                TPoly::zero()
            };
            if expect != value {
                bad.push(format!(
                    "g={} mu={:?}: cached {value}, recomputed {expect}",
                    key.g, key.mu
                ));
            }
        }
        Ok(bad)
    }
}
