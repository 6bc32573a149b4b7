//! Persistent cache of module structures keyed by schema, code version, ring and object.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

use log::{debug, warn};
use rbloch_core::Structure;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Identifies the code that produced an entry.
pub fn code_version() -> String {
    let mut h = Sha256::new();
    h.update(b"rbloch-core ");
    h.update(env!("CARGO_PKG_VERSION").as_bytes());
    h.update(SCHEMA_VERSION.to_le_bytes());
    hex(&h.finalize())[..16].to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub schema: u32,
    pub code_version: String,
    pub descriptor: String,
    pub object: String,
    pub structure: Structure,
    pub created: u64,
}

pub struct Cache {
    dir: Option<PathBuf>,
    version: String,
    memory: Mutex<HashMap<(String, String), Structure>>,
}

impl Cache {
    /// Opens a cache in `dir`, falling back to memory when it cannot be written.
    pub fn open(dir: Option<PathBuf>) -> Self {
        Self::with_version(dir, code_version())
    }

    pub fn with_version(dir: Option<PathBuf>, version: String) -> Self {
        let dir = dir.and_then(|d| match writable(&d) {
            Ok(()) => Some(d),
            Err(e) => {
                warn!("cache directory {} is not writable ({e}); caching in memory", d.display());
                None
            }
        });
        Cache { dir, version, memory: Mutex::new(HashMap::new()) }
    }

    pub fn entry_path(&self, descriptor: &str, object: &str) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        let mut h = Sha256::new();
        for part in [&SCHEMA_VERSION.to_string(), &self.version, descriptor, object] {
            h.update(part.as_bytes());
            h.update([0u8]);
        }
        Some(dir.join(format!("{}.json", &hex(&h.finalize())[..32])))
    }

    pub fn get(&self, descriptor: &str, object: &str) -> Option<Structure> {
        let key = (descriptor.to_string(), object.to_string());
        if let Some(s) = self.memory.lock().unwrap().get(&key) {
            return Some(s.clone());
        }
        let path = self.entry_path(descriptor, object)?;
        let text = fs::read_to_string(&path).ok()?;
        match serde_json::from_str::<CacheEntry>(&text) {
            Ok(e)
                if e.schema == SCHEMA_VERSION
                    && e.code_version == self.version
                    && e.descriptor == descriptor
                    && e.object == object =>
            {
                debug!("cache hit {descriptor} {object}");
                self.memory.lock().unwrap().insert(key, e.structure.clone());
                Some(e.structure)
            }
            Ok(_) => None,
            Err(err) => {
                warn!("evicting corrupt cache entry {} ({err})", path.display());
                let _ = fs::remove_file(&path);
                None
            }
        }
    }

    pub fn put(&self, descriptor: &str, object: &str, structure: &Structure) {
        self.memory
            .lock()
            .unwrap()
            .insert((descriptor.to_string(), object.to_string()), structure.clone());
        let Some(path) = self.entry_path(descriptor, object) else { return };
        let entry = CacheEntry {
            schema: SCHEMA_VERSION,
            code_version: self.version.clone(),
            descriptor: descriptor.into(),
            object: object.into(),
            structure: structure.clone(),
            created: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
        };
        if let Err(e) = write_atomic(&path, &serde_json::to_vec_pretty(&entry).unwrap()) {
            warn!("could not write cache entry {}: {e}", path.display());
        }
    }

    /// Returns the cached structure or computes and stores it; the flag reports a hit.
    pub fn get_or_compute<E>(
        &self,
        descriptor: &str,
        object: &str,
        compute: impl FnOnce() -> Result<Structure, E>,
    ) -> Result<(Structure, bool), E> {
        if let Some(s) = self.get(descriptor, object) {
            return Ok((s, true));
        }
        let s = compute()?;
        self.put(descriptor, object, &s);
        Ok((s, false))
    }
}

fn writable(dir: &Path) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    tempfile::NamedTempFile::new_in(dir).map(drop)
}

fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
