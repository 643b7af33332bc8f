//! Versioned JSON cache files shared between processes.
//!
//! Each entry lives in its own file `<kind>-v<version>-<key>.json` holding an
//! envelope with the format version, kind and key next to the payload. Reads
//! and writes of an entry happen under an exclusive advisory lock on a sibling
//! `.lock` file; writers go through a temporary file and an atomic rename.
//! An entry whose envelope does not match (older version, different key,
//! unparseable) is recomputed and replaced.

use std::fs::{self, File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Environment variable naming the cache directory. Unset disables the disk cache.
pub const CACHE_DIR_ENV: &str = "GCLM_CACHE_DIR";

/// Bumped whenever any cached payload changes meaning.
pub const CACHE_FORMAT_VERSION: u32 = 1;

pub fn cache_dir_from_env() -> Option<PathBuf> {
    std::env::var_os(CACHE_DIR_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

#[derive(Serialize, Deserialize)]
struct Envelope<T> {
    format_version: u32,
    kind: String,
    key: String,
    payload: T,
}

pub(crate) fn entry_path(dir: &Path, kind: &str, key: &str) -> PathBuf {
    dir.join(format!("{kind}-v{CACHE_FORMAT_VERSION}-{key}.json"))
}

/// Returns the cached payload for `(kind, key)` or computes, stores and
/// returns it. With `dir = None` this just calls `compute`.
pub(crate) fn load_or_compute<T, F>(dir: Option<&Path>, kind: &str, key: &str, compute: F) -> Result<T>
where
    T: Serialize + DeserializeOwned,
    F: FnOnce() -> Result<T>,
{
    let Some(dir) = dir else {
        return compute();
    };
    fs::create_dir_all(dir).map_err(|e| cache_err(dir, e))?;
    let path = entry_path(dir, kind, key);
    let lock_path = path.with_extension("json.lock");
    let lock = OpenOptions::new()
        .create(true)
        .truncate(false)
        .write(true)
        .open(&lock_path)
        .map_err(|e| cache_err(&lock_path, e))?;
    lock.lock().map_err(|e| cache_err(&lock_path, e))?;

    if let Some(payload) = read_entry(&path, kind, key) {
        return Ok(payload);
    }
    let payload = compute()?;
    write_entry(&path, kind, key, &payload)?;
    // lock released when `lock` is dropped
    Ok(payload)
}

fn read_entry<T: DeserializeOwned>(path: &Path, kind: &str, key: &str) -> Option<T> {
    let text = fs::read_to_string(path).ok()?;
    match serde_json::from_str::<Envelope<T>>(&text) {
        Ok(env) if env.format_version == CACHE_FORMAT_VERSION && env.kind == kind && env.key == key => {
            Some(env.payload)
        }
        Ok(_) => {
            log::warn!("cache entry {} does not match the expected version or key; recomputing", path.display());
            None
        }
        Err(e) => {
            log::warn!("cache entry {} is unreadable ({e}); recomputing", path.display());
            None
        }
    }
}

fn write_entry<T: Serialize>(path: &Path, kind: &str, key: &str, payload: &T) -> Result<()> {
    let env = Envelope {
        format_version: CACHE_FORMAT_VERSION,
        kind: kind.to_string(),
        key: key.to_string(),
        payload,
    };
    let tmp = path.with_extension(format!("json.tmp{}", std::process::id()));
    let mut file = File::create(&tmp).map_err(|e| cache_err(&tmp, e))?;
    serde_json::to_writer(&mut file, &env)?;
    file.write_all(b"\n").map_err(|e| cache_err(&tmp, e))?;
    file.sync_all().map_err(|e| cache_err(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| cache_err(path, e))?;
    Ok(())
}

fn cache_err(path: &Path, e: std::io::Error) -> Error {
    Error::Cache {
        path: path.to_path_buf(),
        message: e.to_string(),
    }
}
