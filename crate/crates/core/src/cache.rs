//! On-disk cache of expensive results, keyed by a SHA-256 content hash
//! of the preset file and the request. Enabled by setting
//! `UQBASIS_CACHE_DIR`; unset means no caching.

use std::path::PathBuf;

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::Result;

pub const CACHE_ENV: &str = "UQBASIS_CACHE_DIR";

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

/// Hex digest of the parts, each length-prefixed so that concatenation
/// boundaries matter.
pub fn content_key(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    hex::encode(h.finalize())
}

impl Cache {
    pub fn from_env() -> Self {
        Cache { dir: std::env::var_os(CACHE_ENV).filter(|s| !s.is_empty()).map(PathBuf::from) }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: Some(dir.into()) }
    }

    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    fn path(&self, kind: &str, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(kind).join(format!("{key}.json")))
    }

    /// A missing or unreadable entry is a miss.
    pub fn get<T: DeserializeOwned>(&self, kind: &str, key: &str) -> Option<T> {
        let bytes = std::fs::read(self.path(kind, key)?).ok()?;
        serde_json::from_slice(&bytes).ok()
    }

    /// Writes through a temporary file so readers never see partial data.
    pub fn put<T: Serialize>(&self, kind: &str, key: &str, value: &T) -> Result<()> {
        let Some(path) = self.path(kind, key) else { return Ok(()) };
        let dir = path.parent().expect("cache path has a parent");
        std::fs::create_dir_all(dir)?;
        let tmp = dir.join(format!(".{key}.{}.tmp", std::process::id()));
        std::fs::write(&tmp, serde_json::to_vec(value)?)?;
        std::fs::rename(tmp, path)?;
        Ok(())
    }

    /// Returns the cached value or computes and stores it.
    pub fn get_or_compute<T, F>(&self, kind: &str, key: &str, f: F) -> Result<T>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<T>,
    {
        if let Some(v) = self.get(kind, key) {
            return Ok(v);
        }
        let v = f()?;
        self.put(kind, key, &v)?;
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_separate_parts() {
        assert_ne!(content_key(&[b"ab", b"c"]), content_key(&[b"a", b"bc"]));
        assert_eq!(content_key(&[b"x"]).len(), 64);
    }

    #[test]
    fn round_trip_and_disabled() {
        let dir = std::env::temp_dir().join(format!("uqbasis-cache-test-{}", std::process::id()));
        let c = Cache::at(&dir);
        let k = content_key(&[b"t"]);
        assert_eq!(c.get::<Vec<i64>>("t", &k), None);
        let mut calls = 0;
        let v = c.get_or_compute("t", &k, || { calls += 1; Ok(vec![1i64, 2]) }).unwrap();
        let w = c.get_or_compute("t", &k, || { calls += 1; Ok(vec![0i64]) }).unwrap();
        assert_eq!((v, w, calls), (vec![1, 2], vec![1, 2], 1));
        let _ = std::fs::remove_dir_all(&dir);
        let d = Cache::disabled();
        d.put("t", &k, &1).unwrap();
        assert_eq!(d.get::<i64>("t", &k), None);
    }
}
