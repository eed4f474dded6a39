//! Resolution cache: a concurrent in-memory map with an optional
//! versioned on-disk layer (directory from `QGRKIT_CACHE` or a flag).

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::gb::GbError;
use crate::module::PresentedModule;
use crate::resolution::{free_resolution, ChainComplexSegment};

pub const CACHE_FORMAT_VERSION: u32 = 1;

/// Environment variable naming the cache directory.
pub const CACHE_ENV_VAR: &str = "QGRKIT_CACHE";

/// Default cache directory name.
pub const DEFAULT_CACHE_DIR: &str = ".qgrkit-cache";

#[derive(Serialize, Deserialize)]
struct DiskEntry {
    version: u32,
    ring_fingerprint: String,
    module_fingerprint: String,
    length: usize,
    segment: ChainComplexSegment,
}

/// Concurrent resolution store; collisions are benign because values
/// are canonical, so the last writer wins.
#[derive(Debug, Default)]
pub struct ResolutionCache {
    memory: RwLock<HashMap<String, Arc<ChainComplexSegment>>>,
    disk_dir: Option<PathBuf>,
}

impl ResolutionCache {
    pub fn in_memory() -> Self {
        ResolutionCache { memory: RwLock::new(HashMap::new()), disk_dir: None }
    }

    pub fn with_disk(dir: PathBuf) -> Self {
        ResolutionCache { memory: RwLock::new(HashMap::new()), disk_dir: Some(dir) }
    }

    fn key(m: &PresentedModule) -> String {
        format!("{}-{}", crate::fingerprint::of(&m.ring), m.fingerprint())
    }

    /// A resolution of `m` through homological position `length`,
    /// reusing and extending cached segments.
    pub fn resolution(
        &self,
        m: &PresentedModule,
        length: usize,
    ) -> Result<Arc<ChainComplexSegment>, GbError> {
        let key = Self::key(m);
        if let Some(seg) = self.memory.read().expect("cache lock").get(&key) {
            if seg.length() >= length {
                return Ok(Arc::clone(seg));
            }
        }
        if let Some(seg) = self.load_disk(&key, m) {
            if seg.length() >= length {
                let seg = Arc::new(seg);
                self.memory.write().expect("cache lock").insert(key, Arc::clone(&seg));
                return Ok(seg);
            }
        }
        // extend the best cached segment or compute from scratch
        let base = self.memory.read().expect("cache lock").get(&key).map(Arc::clone);
        let segment = match base {
            Some(seg) if seg.length() >= 1 => {
                let mut s = (*seg).clone();
                s.extend_to(length)?;
                s
            }
            _ => free_resolution(m, length.max(1))?,
        };
        let segment = Arc::new(segment);
        self.memory
            .write()
            .expect("cache lock")
            .insert(key.clone(), Arc::clone(&segment));
        self.store_disk(&key, m, &segment, length);
        Ok(segment)
    }

    fn disk_path(&self, key: &str) -> Option<PathBuf> {
        self.disk_dir.as_ref().map(|d| d.join(format!("res-{key}.json")))
    }

    fn load_disk(&self, key: &str, m: &PresentedModule) -> Option<ChainComplexSegment> {
        let path = self.disk_path(key)?;
        let data = std::fs::read_to_string(path).ok()?;
        let entry: DiskEntry = serde_json::from_str(&data).ok()?;
        if entry.version != CACHE_FORMAT_VERSION || entry.module_fingerprint != m.fingerprint()
        {
            return None;
        }
        Some(entry.segment)
    }

    fn store_disk(
        &self,
        key: &str,
        m: &PresentedModule,
        segment: &ChainComplexSegment,
        length: usize,
    ) {
        let Some(path) = self.disk_path(key) else { return };
        if let Some(dir) = &self.disk_dir {
            if std::fs::create_dir_all(dir).is_err() {
                return;
            }
        }
        let entry = DiskEntry {
            version: CACHE_FORMAT_VERSION,
            ring_fingerprint: crate::fingerprint::of(&m.ring),
            module_fingerprint: m.fingerprint(),
            length,
            segment: segment.clone(),
        };
        if let Ok(json) = serde_json::to_string(&entry) {
            let _ = std::fs::write(path, json);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::make_chi;
    use crate::ring::make_ring;

    #[test]
    fn memory_roundtrip_and_extension() {
        let a = make_ring(2, true).unwrap();
        let chi = make_chi(&a, 0).unwrap();
        let cache = ResolutionCache::in_memory();
        let r2 = cache.resolution(&chi, 2).unwrap();
        assert_eq!(r2.length(), 2);
        let r3 = cache.resolution(&chi, 3).unwrap();
        assert!(r3.length() >= 3);
        // shorter request reuses the longer segment
        let r1 = cache.resolution(&chi, 1).unwrap();
        assert!(r1.length() >= 3);
    }

    #[test]
    fn disk_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let a = make_ring(2, true).unwrap();
        let chi = make_chi(&a, 0).unwrap();
        {
            let cache = ResolutionCache::with_disk(dir.path().to_path_buf());
            cache.resolution(&chi, 2).unwrap();
        }
        let cache2 = ResolutionCache::with_disk(dir.path().to_path_buf());
        let seg = cache2.resolution(&chi, 2).unwrap();
        assert_eq!(seg.length(), 2);
        assert!(seg.differentials_compose_to_zero());
    }
}
