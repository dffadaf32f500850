//! On-disk surface caches keyed by the content hash of the triangulation.
//!
//! ```text
//! # altknot surface cache
//! hash <sha256 of the canonical triangulation text>
//! kind vertex
//! x7t: 1 1 1 1 0 0 0 ...
//! ```

use super::SurfaceKind;
use crate::error::{Error, Result};
use crate::normal::NormalCoordinates;
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheKey {
    pub hash: String,
    pub kind: SurfaceKind,
}

impl CacheKey {
    pub fn path(&self, dir: &Path) -> PathBuf {
        dir.join(format!("{}.{}.cache", self.hash, self.kind.tag()))
    }
}

/// Reads a cache entry; `Ok(None)` when absent, an error when present but
/// written for different contents.
pub fn load_cached(dir: &Path, key: &CacheKey) -> Result<Option<Vec<NormalCoordinates>>> {
    let path = key.path(dir);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let mut hash = None;
    let mut kind = None;
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(h) = line.strip_prefix("hash ") {
            hash = Some(h.trim().to_string());
        } else if let Some(k) = line.strip_prefix("kind ") {
            kind = Some(k.trim().to_string());
        } else {
            out.push(line.parse::<NormalCoordinates>()?);
        }
    }
    if hash.as_deref() != Some(key.hash.as_str()) {
        return Err(Error::Cache(format!(
            "{} was written for different triangulation contents",
            path.display()
        )));
    }
    if kind.as_deref() != Some(key.kind.tag()) {
        return Err(Error::Cache(format!("{} holds a different surface kind", path.display())));
    }
    Ok(Some(out))
}

pub fn store_cached<'a>(
    dir: &Path,
    key: &CacheKey,
    coords: impl IntoIterator<Item = &'a NormalCoordinates>,
) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut text = format!("# altknot surface cache\nhash {}\nkind {}\n", key.hash, key.kind.tag());
    for c in coords {
        text.push_str(&format!("{c}\n"));
    }
    let path = key.path(dir);
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, text)?;
    fs::rename(tmp, path)?;
    Ok(())
}
