//! Shared computation context: caches for truncations, resolutions and
//! Ext tables. All values are canonical, so concurrent duplicate work
//! is harmless.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, RwLock};

use crate::cache::ResolutionCache;
use crate::freemod::FreeElement;
use crate::gb::GbError;
use crate::module::{truncate_with_inclusion, ModuleError, PresentedModule};
use crate::resolution::ChainComplexSegment;

type TruncationEntry = Arc<(PresentedModule, Vec<FreeElement>)>;

#[derive(Debug, Default)]
pub struct Engine {
    resolutions: ResolutionCache,
    truncations: RwLock<HashMap<(String, i64), TruncationEntry>>,
    ext_table: RwLock<HashMap<(String, String, usize), crate::ext::ExtResult>>,
}

impl Engine {
    pub fn new() -> Self {
        Engine {
            resolutions: ResolutionCache::in_memory(),
            truncations: RwLock::new(HashMap::new()),
            ext_table: RwLock::new(HashMap::new()),
        }
    }

    pub fn with_disk_cache(dir: PathBuf) -> Self {
        Engine {
            resolutions: ResolutionCache::with_disk(dir),
            truncations: RwLock::new(HashMap::new()),
            ext_table: RwLock::new(HashMap::new()),
        }
    }

    pub fn resolution(
        &self,
        m: &PresentedModule,
        length: usize,
    ) -> Result<Arc<ChainComplexSegment>, GbError> {
        self.resolutions.resolution(m, length)
    }

    pub fn truncation(&self, m: &PresentedModule, t: i64) -> Result<PresentedModule, ModuleError> {
        Ok(self.truncation_with_inclusion(m, t)?.0.clone())
    }

    pub fn truncation_with_inclusion(
        &self,
        m: &PresentedModule,
        t: i64,
    ) -> Result<TruncationEntry, ModuleError> {
        let key = (m.fingerprint(), t);
        if let Some(cached) = self.truncations.read().expect("lock").get(&key) {
            return Ok(Arc::clone(cached));
        }
        let value = Arc::new(truncate_with_inclusion(m, t)?);
        self.truncations
            .write()
            .expect("lock")
            .insert(key, Arc::clone(&value));
        Ok(value)
    }

    pub(crate) fn ext_lookup(
        &self,
        key: &(String, String, usize),
    ) -> Option<crate::ext::ExtResult> {
        self.ext_table.read().expect("lock").get(key).cloned()
    }

    pub(crate) fn ext_store(
        &self,
        key: (String, String, usize),
        value: crate::ext::ExtResult,
    ) {
        self.ext_table.write().expect("lock").insert(key, value);
    }
}
