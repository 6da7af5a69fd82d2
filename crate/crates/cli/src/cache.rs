//! Append-only JSON-lines result cache. The file is read once into a
//! snapshot; appends are serialized through a sibling `.lock` file.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use mzv_core::{MzvError, Result};

/// How long a writer waits for the lock before giving up.
const LOCK_TIMEOUT: Duration = Duration::from_secs(10);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    /// `kind|target|method|precision|cutoff`.
    pub key: String,
    /// Decimal value that parses back to the same binary value.
    pub value: String,
    pub err: String,
    pub method: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

pub fn cache_key(kind: &str, target: &str, method: &str, prec_bits: u32, cutoff: u64) -> String {
    format!("{kind}|{target}|{method}|{prec_bits}|{cutoff}")
}

pub struct Cache {
    path: PathBuf,
    snapshot: HashMap<String, CacheEntry>,
}

struct LockGuard(PathBuf);

impl Drop for LockGuard {
    fn drop(&mut self) {
        let _ = std::fs::remove_file(&self.0);
    }
}

fn lock_path(path: &Path) -> PathBuf {
    let mut p = path.as_os_str().to_owned();
    p.push(".lock");
    PathBuf::from(p)
}

fn acquire(lock: &Path) -> Result<LockGuard> {
    let start = Instant::now();
    loop {
        match OpenOptions::new().write(true).create_new(true).open(lock) {
            Ok(_) => return Ok(LockGuard(lock.to_path_buf())),
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists && start.elapsed() < LOCK_TIMEOUT => {
                std::thread::sleep(Duration::from_millis(20));
            }
            Err(e) => return Err(MzvError::Resource(format!("cannot lock cache {}: {e}", lock.display()))),
        }
    }
}

impl Cache {
    /// Loads the snapshot; a missing file is an empty cache. Later lines
    /// win over earlier ones with the same key, and unreadable lines are
    /// skipped.
    pub fn open(path: &Path) -> Result<Self> {
        let mut snapshot = HashMap::new();
        match std::fs::read_to_string(path) {
            Ok(text) => {
                for line in text.lines() {
                    if let Ok(e) = serde_json::from_str::<CacheEntry>(line) {
                        snapshot.insert(e.key.clone(), e);
                    }
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(MzvError::Resource(format!("cannot read cache {}: {e}", path.display()))),
        }
        Ok(Cache { path: path.to_path_buf(), snapshot })
    }

    pub fn get(&self, key: &str) -> Option<&CacheEntry> {
        self.snapshot.get(key)
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.snapshot.len()
    }

    pub fn append(&mut self, key: String, value: String, err: String, method: String) -> Result<()> {
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let entry = CacheEntry { key, value, err, method, timestamp };
        let line = serde_json::to_string(&entry).expect("cache entry serializes");
        let _guard = acquire(&lock_path(&self.path))?;
        let mut f: File = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| MzvError::Resource(format!("cannot open cache {}: {e}", self.path.display())))?;
        writeln!(f, "{line}").map_err(|e| MzvError::Resource(e.to_string()))?;
        self.snapshot.insert(entry.key.clone(), entry);
        Ok(())
    }
}
