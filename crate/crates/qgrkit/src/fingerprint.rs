//! Stable fingerprints of rings and modules for cache keys.

use sha2::{Digest, Sha256};

/// Hex digest of a canonical serde serialization.
pub fn of<T: serde::Serialize>(value: &T) -> String {
    let json = serde_json::to_string(value).expect("serializable");
    let mut hasher = Sha256::new();
    hasher.update(json.as_bytes());
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}
